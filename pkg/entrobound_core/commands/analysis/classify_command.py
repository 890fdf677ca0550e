# entrobound_core/commands/analysis/classify_command.py
import argparse
import logging

from entrobound_core.commands.run_config import CommandContext
from entrobound_core.conditions.classifier import classify
from entrobound_core.errors import EXIT_OK

logger = logging.getLogger("entrobound.commands.classify")

COMMAND_DEFINITIONS = [
    {
        "name": "classify",
        "handler": "handle_classify_command",
        "arguments": "add_classify_arguments",
        "help": {
            "usage": "entrobound classify --sigma SPEC --p P --q Q [--window N] [--rtol RTOL] [--plateau-rtol TOL]",
            "description": "Runs the decay-condition battery for the branch picked by p and q.",
            "aliases": [],
        },
    }
]

CSV_COLUMNS = ("condition", "verdict", "analytic", "window", "witness", "notes")


def add_classify_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", required=True, help="Sequence spec, e.g. explog:a=1,lambda=2")
    parser.add_argument("--p", dest="p", required=True, help="Source exponent, a positive decimal or 'inf'")
    parser.add_argument("--q", dest="q", required=True, help="Target exponent, a positive decimal or 'inf'")
    parser.add_argument("--window", default=None, help="Number of leading terms inspected by numeric checks.")
    parser.add_argument("--rtol", default=None, help="Relative tolerance of tail sums.")
    parser.add_argument("--plateau-rtol", dest="plateau_rtol", default=None, help="Plateau tolerance of numeric checks.")


def handle_classify_command(context: CommandContext) -> int:
    run = context.run
    pair = run.pair.require_distinct()
    reports = classify(
        run.sequence,
        pair.p,
        pair.q,
        window=context.window,
        rtol=context.rtol,
        plateau_rtol=context.plateau_rtol,
        threads=context.config.threads,
    )
    for report in reports:
        logger.info(f"{run.sequence.describe()}: {report.condition} {report.verdict.value}")
    context.emit(
        [report.to_dict() for report in reports],
        CSV_COLUMNS,
        window=context.window,
        rtol=context.rtol,
        plateau_rtol=context.plateau_rtol,
    )
    return EXIT_OK
