# entrobound_core/commands/validation/table1_command.py
import argparse
import logging

from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK, InvariantViolationError
from entrobound_core.verification.table1 import TABLE1_P, TABLE1_Q, table1_matrix

logger = logging.getLogger("entrobound.commands.table1")

COMMAND_DEFINITIONS = [
    {
        "name": "table1",
        "handler": "handle_table1_command",
        "arguments": "add_table1_arguments",
        "help": {
            "usage": "entrobound table1 [--window N]",
            "description": (
                "EXP / ALP / AMP verdicts for ExpLog, ExpPoly and ExpExp at lambda in {0.5, 1, 2}, a=1, p=2, q=1, "
                "next to the expected entries; exits 5 on any mismatch."
            ),
            "aliases": [],
        },
    }
]

CSV_COLUMNS = (
    "family",
    "lambda",
    "spec",
    "exp",
    "alp",
    "amp",
    "expected_exp",
    "expected_alp",
    "expected_amp",
    "match",
    "note",
)


def add_table1_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", default=None, help="Window of the condition checks.")
    parser.add_argument("--rtol", default=None, help="Relative tolerance of tail sums.")


def handle_table1_command(context: CommandContext) -> int:
    rows = table1_matrix(context.window, context.rtol, context.plateau_rtol, context.config.threads)
    context.emit(
        [row.to_dict() for row in rows],
        CSV_COLUMNS,
        p=TABLE1_P,
        q=TABLE1_Q,
        window=context.window,
        rtol=context.rtol,
    )
    mismatches = [row for row in rows if not row.matches]
    if mismatches:
        raise InvariantViolationError(
            f"{len(mismatches)} of {len(rows)} matrix entries differ from the expected table",
            mismatches[0].to_dict(),
        )
    logger.info(f"table1: all {len(rows)} rows match")
    return EXIT_OK
