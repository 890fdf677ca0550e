# entrobound_core/commands/analysis/tail_command.py
import argparse
import logging

from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK, SpecParseError
from entrobound_core.sequences.sequence_ops import tail_bracket

logger = logging.getLogger("entrobound.commands.tail")

COMMAND_DEFINITIONS = [
    {
        "name": "tail",
        "handler": "handle_tail_command",
        "arguments": "add_tail_arguments",
        "help": {
            "usage": "entrobound tail --sigma SPEC (--r R | --p P --q Q) [--k LIST] [--rtol RTOL]",
            "description": "Tail norms tau_k = ||(sigma_n)_{n>=k}||_r with their certified brackets.",
            "aliases": [],
        },
    }
]

CSV_COLUMNS = ("k", "r", "log10_value", "value", "log10_lower", "log10_upper", "terms_summed", "exact")

DEFAULT_K_LIST = "1,2,4,8,16,32,64,128"


def add_tail_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", required=True, help="Sequence spec, e.g. poly:a=1,alpha=2")
    parser.add_argument("--r", dest="r", default=None, help="Tail exponent; derived from p > q when omitted.")
    parser.add_argument("--p", dest="p", default=None, help="Source exponent (with --q, gives 1/r = 1/q - 1/p)")
    parser.add_argument("--q", dest="q", default=None, help="Target exponent")
    parser.add_argument("--k", dest="k", default=DEFAULT_K_LIST, help=f"Comma list or range a..b. (Default: {DEFAULT_K_LIST})")
    parser.add_argument("--rtol", default=None, help="Relative tolerance of tail sums.")


def handle_tail_command(context: CommandContext) -> int:
    run = context.run
    if run.r is not None:
        r = run.r
    elif run.p is not None and run.q is not None:
        r = run.pair.r
    else:
        raise SpecParseError("tail needs --r, or --p and --q with p > q")

    rows = []
    for k in run.k:
        estimate = tail_bracket(run.sequence, k, r, context.rtol)
        rows.append(estimate.to_dict())
    logger.debug(f"tail: {len(rows)} rows for {run.sequence.describe()} at r={r}")
    context.emit(rows, CSV_COLUMNS, rtol=context.rtol)
    return EXIT_OK
