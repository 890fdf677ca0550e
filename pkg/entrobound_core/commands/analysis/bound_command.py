# entrobound_core/commands/analysis/bound_command.py
import argparse
import logging
from typing import Tuple

from entrobound_core.bounds.bound_curve import bound_curve
from entrobound_core.bounds.bound_result import FormRequest
from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK, SpecParseError
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.sequence_spec import ExpLog, SequenceSpec

logger = logging.getLogger("entrobound.commands.bound")

COMMAND_DEFINITIONS = [
    {
        "name": "bound",
        "handler": "handle_bound_command",
        "arguments": "add_bound_arguments",
        "help": {
            "usage": "entrobound bound --sigma SPEC --p P --q Q --n GRID [--forms ub,lb] [--rtol RTOL]",
            "description": "Evaluates bound forms for e_n(D_sigma) on an n grid, one row per (n, form).",
            "aliases": [],
        },
    }
]

CSV_COLUMNS = ("n", "form", "log10_value", "value", "argmax_k", "k_min", "k_max", "certificate")

OPTIMAL_FORMS = (FormRequest.OPT_EXP, FormRequest.OPT_ALP, FormRequest.OPT_AMP)


def add_bound_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", required=True, help="Sequence spec, e.g. geom:c=1,b=2 or file:weights.txt")
    parser.add_argument("--p", dest="p", required=True, help="Source exponent, a positive decimal or 'inf'")
    parser.add_argument("--q", dest="q", required=True, help="Target exponent, a positive decimal or 'inf'")
    parser.add_argument("--n", dest="n", required=True, help="Comma list of n, or a dyadic range 2^a..2^b")
    parser.add_argument(
        "--forms",
        default="ub,lb",
        help="Comma list of ub, lb, ub-const, opt-exp, opt-alp, opt-amp, amp-envelope. (Default: ub,lb)",
    )
    parser.add_argument("--rtol", default=None, help="Relative tolerance of tail sums.")


def open_case_forms(
    spec: SequenceSpec, pair: ExponentPair, forms: Tuple[FormRequest, ...]
) -> Tuple[FormRequest, ...]:
    """ExpLog with lambda < 1 and p < q has no known optimal form; only the general bounds are evaluated."""
    if not (isinstance(spec, ExpLog) and spec.lam < 1.0 and pair.p_less_than_q):
        return forms
    kept = tuple(form for form in forms if form not in OPTIMAL_FORMS)
    dropped = [form.value for form in forms if form in OPTIMAL_FORMS]
    if dropped:
        logger.warning(f"{spec.describe()}: no optimal form is known for p < q, skipping {', '.join(dropped)}")
    if not kept:
        raise SpecParseError(f"{spec.describe()} with p < q supports only ub, ub-const and lb")
    return kept


def handle_bound_command(context: CommandContext) -> int:
    run = context.run
    pair = run.pair.require_distinct()
    forms = open_case_forms(run.sequence, pair, run.forms)
    results = bound_curve(
        run.sequence, pair, run.n_grid, forms, context.rtol, context.config.scan, context.config.threads
    )
    heuristic = sorted({result.form.value for result in results if not result.certified})
    if heuristic:
        logger.warning(f"{run.sequence.describe()}: scan truncation is heuristic for {', '.join(heuristic)}")
    context.emit([result.to_dict() for result in results], CSV_COLUMNS, rtol=context.rtol)
    return EXIT_OK
