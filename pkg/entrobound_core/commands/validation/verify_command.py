# entrobound_core/commands/validation/verify_command.py
import argparse
import dataclasses
import logging

from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK
from entrobound_core.verification.invariant_suite import InvariantSuite, require_all_passed

logger = logging.getLogger("entrobound.commands.verify")

COMMAND_DEFINITIONS = [
    {
        "name": "verify",
        "handler": "handle_verify_command",
        "arguments": "add_verify_arguments",
        "help": {
            "usage": "entrobound verify [--quick] [--check NAME ...] [--seed SEED]",
            "description": "Runs the invariant suite and prints each check's margin; exits 5 on the first failure.",
            "aliases": ["check"],
        },
    }
]

CSV_COLUMNS = ("check", "passed", "margin", "cases", "counterexample")


def add_verify_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--quick", action="store_true", help="Smaller grids and sample counts.")
    parser.add_argument(
        "--check",
        action="append",
        default=None,
        metavar="NAME",
        help="Run only this check; may be given several times.",
    )
    parser.add_argument("--window", default=None, help="Window of the condition checks.")
    parser.add_argument("--rtol", default=None, help="Relative tolerance of tail sums.")
    parser.add_argument("--seed", default=None, help="Seed of Monte Carlo and packing streams.")


def handle_verify_command(context: CommandContext) -> int:
    run = context.run
    suite = InvariantSuite(
        quick=run.quick,
        window=context.window,
        rtol=context.rtol,
        plateau_rtol=context.plateau_rtol,
        scan=context.config.scan,
        oracle=dataclasses.replace(context.config.oracle, seed=context.seed),
        threads=context.config.threads,
    )
    results = suite.run(only=run.checks or None)
    context.emit(
        [result.to_dict() for result in results],
        CSV_COLUMNS,
        window=context.window,
        rtol=context.rtol,
        seed=context.seed,
    )
    failed = [result.name for result in results if not result.passed]
    if failed:
        logger.error(f"verify: {len(failed)} check(s) failed: {', '.join(failed)}")
    require_all_passed(results)
    return EXIT_OK
