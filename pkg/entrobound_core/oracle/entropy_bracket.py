# entrobound_core/oracle/entropy_bracket.py
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from entrobound_core.config_defs import OracleConfig
from entrobound_core.errors import GridTooLargeError
from entrobound_core.oracle.covering import covering_bound_rhs, covering_upper, packing_covering_lower, volume_lower_nd
from entrobound_core.oracle.finite_diag import FiniteDiag

logger = logging.getLogger("entrobound.oracle.bracket")

_DEFAULT_ORACLE = OracleConfig()
_MAX_DOUBLINGS = 200
DEFAULT_BRACKET_TOLERANCE = 1e-3


@dataclass(frozen=True)
class EntropyBracket:
    """lo <= e_n(D_sigma) <= hi, each side backed by a witness count."""

    n: int
    lo: float
    hi: float
    lower_witness: Optional[str]
    upper_iterations: int
    lower_iterations: int
    exhausted: bool

    def as_tuple(self) -> Tuple[float, float]:
        return self.lo, self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lo": self.lo,
            "hi": self.hi,
            "width": self.width,
            "lower_witness": self.lower_witness,
            "upper_iterations": self.upper_iterations,
            "lower_iterations": self.lower_iterations,
            "budget_exhausted": self.exhausted,
        }


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return int(n)


def _lower_witness(diag: FiniteDiag, eps: float, n: int, oracle: OracleConfig) -> Optional[str]:
    """Names a certificate of N(eps) > n, or None."""
    if volume_lower_nd(diag, eps) > n:
        return "volume"
    if packing_covering_lower(diag, eps, oracle.seed, oracle.packing_candidates) > n:
        return "packing"
    return None


def _covers_with_n(diag: FiniteDiag, eps: float, n: int, oracle: OracleConfig) -> bool:
    if volume_lower_nd(diag, eps) > n:
        return False
    try:
        return covering_upper(diag, eps, oracle.grid_resolution(eps), oracle.max_grid_points, limit=n) <= n
    except (GridTooLargeError, MemoryError):
        logger.debug(f"covering at eps={eps:.6g} too large to certify")
        return False


def entropy_bracket(
    diag: FiniteDiag,
    n: int,
    oracle: OracleConfig = _DEFAULT_ORACLE,
    tolerance: float = DEFAULT_BRACKET_TOLERANCE,
) -> EntropyBracket:
    """Two bisections on eps in [0, ||D_sigma||]: hi certified by a cover of size <= n,
    lo by a volume or packing count above n.

    Each bisection stops after oracle.bisection_budget steps, or once its interval is
    narrower than tolerance * ||D_sigma||.
    """
    n = _check_n(n)
    norm = diag.norm
    width_target = tolerance * norm
    budget = oracle.bisection_budget

    # one ball of radius ||D_sigma|| around 0 covers the body
    hi, not_covered = norm, 0.0
    upper_steps = 0
    while upper_steps < budget and hi - not_covered > width_target:
        middle = 0.5 * (not_covered + hi)
        if _covers_with_n(diag, middle, n, oracle):
            hi = middle
        else:
            not_covered = middle
        upper_steps += 1

    lo, no_witness = 0.0, hi
    witness = None
    lower_steps = 0
    while lower_steps < budget and no_witness - lo > width_target:
        middle = 0.5 * (lo + no_witness)
        found = _lower_witness(diag, middle, n, oracle)
        if found is not None:
            lo, witness = middle, found
        else:
            no_witness = middle
        lower_steps += 1

    exhausted = (hi - not_covered > width_target) or (no_witness - lo > width_target)
    if exhausted:
        logger.warning(f"entropy bracket for n={n}, k={diag.k}: bisection budget {budget} exhausted at [{lo:.6g}, {hi:.6g}]")
    return EntropyBracket(n, lo, hi, witness, upper_steps, lower_steps, exhausted)


def finite_upper_bound(diag: FiniteDiag, n: int, budget: int = 60) -> float:
    """e_n <= 2 eps for the smallest bisected eps with covering_bound_rhs(eps) <= n; never above ||D_sigma||."""
    n = _check_n(n)
    log_n = math.log(n)
    norm = diag.norm

    def fits(eps: float) -> bool:
        return covering_bound_rhs(diag, eps).log_value <= log_n

    eps_hi = norm
    for _ in range(_MAX_DOUBLINGS):
        if fits(eps_hi):
            break
        eps_hi *= 2.0
    else:
        return norm

    eps_lo = 0.0
    for _ in range(budget):
        middle = 0.5 * (eps_lo + eps_hi)
        if fits(middle):
            eps_hi = middle
        else:
            eps_lo = middle
    return min(norm, 2.0 * eps_hi)
