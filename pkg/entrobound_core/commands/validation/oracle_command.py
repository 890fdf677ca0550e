# entrobound_core/commands/validation/oracle_command.py
import argparse
import dataclasses
import logging

from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK, SpecParseError
from entrobound_core.oracle.covering import covering_estimate
from entrobound_core.oracle.entropy_bracket import entropy_bracket
from entrobound_core.oracle.finite_diag import FiniteDiag

logger = logging.getLogger("entrobound.commands.oracle")

COMMAND_DEFINITIONS = [
    {
        "name": "oracle",
        "handler": "handle_oracle_command",
        "arguments": "add_oracle_arguments",
        "help": {
            "usage": "entrobound oracle --sigma SPEC --p P --q Q --k K (--n GRID | --eps LIST) [--seed SEED]",
            "description": (
                "Brute-force covering numbers of the first K <= 3 coordinates: "
                "entropy brackets for each n and covering estimates for each eps."
            ),
            "aliases": [],
        },
    }
]

CSV_COLUMNS = (
    "kind",
    "n",
    "lo",
    "hi",
    "width",
    "lower_witness",
    "budget_exhausted",
    "epsilon",
    "n_lower",
    "n_upper",
    "grid_resolution",
    "seed",
)


def add_oracle_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", required=True, help="Sequence spec; its first K terms are used")
    parser.add_argument("--p", dest="p", required=True, help="Source exponent, a positive decimal or 'inf'")
    parser.add_argument("--q", dest="q", required=True, help="Target exponent, a positive decimal or 'inf'")
    parser.add_argument("--k", dest="k", required=True, help="Dimension, 1 to 3")
    parser.add_argument("--n", dest="n", default=None, help="Bracket e_n for each n in this grid")
    parser.add_argument("--eps", default=None, help="Comma list of radii for covering estimates")
    parser.add_argument("--seed", default=None, help="Seed of the packing candidate stream")


def handle_oracle_command(context: CommandContext) -> int:
    run = context.run
    if len(run.k) != 1:
        raise SpecParseError(f"oracle needs a single dimension --k, got {list(run.k)}")
    if not run.n_grid and not run.eps:
        raise SpecParseError("oracle needs --n or --eps")

    oracle = dataclasses.replace(context.config.oracle, seed=context.seed)
    pair = run.pair
    diag = FiniteDiag.from_spec(run.sequence, run.k[0], pair.p, pair.q)
    logger.info(f"oracle on sigma={list(diag.sigma)} p={pair.p} q={pair.q}")

    rows = []
    for n in run.n_grid:
        bracket = entropy_bracket(diag, n, oracle)
        rows.append({"kind": "bracket", **bracket.to_dict()})
    for eps in run.eps:
        estimate = covering_estimate(
            diag,
            eps,
            oracle.grid_resolution(eps),
            oracle.seed,
            oracle.packing_candidates,
            oracle.max_grid_points,
        )
        rows.append({"kind": "covering", **estimate.to_dict()})
    context.emit(
        rows,
        CSV_COLUMNS,
        seed=oracle.seed,
        resolution_factor=oracle.resolution_factor,
        bisection_budget=oracle.bisection_budget,
    )
    return EXIT_OK
