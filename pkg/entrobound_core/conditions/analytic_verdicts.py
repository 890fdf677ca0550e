# entrobound_core/conditions/analytic_verdicts.py
"""Closed-form verdicts for the built-in families. None means 'no closed form' (Explicit)."""
import math
from typing import Optional

from entrobound_core.errors import SequenceDivergenceError
from entrobound_core.sequences.sequence_spec import (
    ExpExp,
    ExpLog,
    ExpPoly,
    Geometric,
    PolyLog,
    Polynomial,
    SequenceSpec,
)

_FAMILIES = (Geometric, Polynomial, PolyLog, ExpLog, ExpPoly, ExpExp)


def is_family(spec: SequenceSpec) -> bool:
    return isinstance(spec, _FAMILIES)


def exp_holds(spec: SequenceSpec, b: Optional[float] = None) -> Optional[bool]:
    """EXP for the given base b, or for some base b > 1 when b is None."""
    if not is_family(spec):
        return None
    if isinstance(spec, Geometric):
        return b is None or b <= spec.b
    if isinstance(spec, ExpPoly):
        if spec.lam > 1.0:
            return True
        if spec.lam == 1.0:
            return b is None or b <= math.exp(spec.a)
        return False
    return isinstance(spec, ExpExp)


def doubling_holds(spec: SequenceSpec) -> Optional[bool]:
    """sigma_n ~ sigma_2n; shared by the almost-increase and geometric-mean characterizations."""
    if not is_family(spec):
        return None
    if isinstance(spec, (Polynomial, PolyLog)):
        return True
    if isinstance(spec, ExpLog):
        return spec.lam <= 1.0
    return False


def alm_incr_holds(spec: SequenceSpec, alpha: float) -> Optional[bool]:
    """sigma_n n^alpha almost increasing."""
    if not is_family(spec):
        return None
    if isinstance(spec, Polynomial):
        return alpha >= spec.alpha
    if isinstance(spec, PolyLog):
        return alpha > spec.alpha or (alpha == spec.alpha and spec.beta <= 0.0)
    if isinstance(spec, ExpLog):
        if spec.lam < 1.0:
            # n^alpha beats exp(-a log(n)^lambda) only for alpha > 0
            return alpha > 0.0
        return spec.lam == 1.0 and alpha >= spec.a
    return False


def _require_ell(spec: SequenceSpec, r: float) -> None:
    if not spec.in_ell(r):
        raise SequenceDivergenceError(f"{spec.describe()} is not in l_{r}")


def alp_holds(spec: SequenceSpec, r: float) -> Optional[bool]:
    """tau_n <~ sigma_n n^(1/r)."""
    if not is_family(spec):
        return None
    _require_ell(spec, r)
    if isinstance(spec, PolyLog):
        return spec.alpha * r > 1.0
    return True


def amp_holds(spec: SequenceSpec, r: float) -> Optional[bool]:
    """tau_n >~ sigma_n n^(1/r)."""
    if not is_family(spec):
        return None
    _require_ell(spec, r)
    if isinstance(spec, (Polynomial, PolyLog)):
        return True
    if isinstance(spec, ExpLog):
        return spec.lam == 1.0
    return False


def tail_doubling_holds(spec: SequenceSpec, r: float) -> Optional[bool]:
    """tau_n ~ tau_2n; within l_r it follows the doubling behavior of sigma."""
    if not is_family(spec):
        return None
    _require_ell(spec, r)
    return doubling_holds(spec)
