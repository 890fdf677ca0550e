# entrobound_core/bounds/volume.py
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from entrobound_core.sequences.exponent_pair import inverse
from entrobound_core.sequences.log_real import LogReal

_LN2 = math.log(2.0)


def _check_exponent(p: float) -> float:
    if math.isnan(p) or p <= 0:
        raise ValueError(f"exponent must lie in (0, inf], got {p}")
    return float(p)


def log_volume_unit_balls(p: float, dims: np.ndarray) -> np.ndarray:
    """log(lambda^k(B_p^k)) for every k in dims."""
    p = _check_exponent(p)
    k = np.asarray(dims, dtype=float)
    if math.isinf(p):
        return k * _LN2
    return k * (_LN2 + gammaln(1.0 + 1.0 / p)) - gammaln(1.0 + k / p)


def volume_unit_ball(p: float, k: int) -> LogReal:
    """lambda^k(B_p^k) = (2 Gamma(1+1/p))^k / Gamma(1+k/p), and 2^k for p = inf."""
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    return LogReal(float(log_volume_unit_balls(p, np.array([k]))[0]))


def log_volume_ratio_roots(p: float, q: float, count: int) -> np.ndarray:
    """(1/k) log(vol B_p^k / vol B_q^k) for k = 1..count; exactly 0 when p == q."""
    if p == q:
        return np.zeros(count)
    dims = np.arange(1, count + 1, dtype=float)
    return (log_volume_unit_balls(p, dims) - log_volume_unit_balls(q, dims)) / dims


@dataclass(frozen=True)
class VolumeRatio:
    p: float
    q: float
    k: int
    log_ratio: float

    @property
    def ratio(self) -> LogReal:
        return LogReal(self.log_ratio)

    @property
    def log_root(self) -> float:
        return self.log_ratio / self.k


def volume_ratio(p: float, q: float, k: int) -> VolumeRatio:
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    if p == q:
        return VolumeRatio(p, q, k, 0.0)
    log_ratio = float(volume_unit_ball(p, k).log_value - volume_unit_ball(q, k).log_value)
    return VolumeRatio(p, q, k, log_ratio)


def volume_ratio_root_constant(p: float, q: float, k0: int) -> float:
    """C with (1/k) log VR_k <= C - (1/p - 1/q) log k for every k >= k0, p < q.

    From the two-sided Stirling bounds sqrt(2 pi x)(x/e)^x <= Gamma(1+x) <= sqrt(2 pi x)(x/e)^x e^(1/(12x)).
    Returns +inf when no bound is available at k0.
    """
    if not p < q:
        raise ValueError("the volume-ratio envelope needs p < q")
    inv_p = inverse(p)
    base = float(gammaln(1.0 + inv_p)) + inv_p * (math.log(p) + 1.0)
    if math.isinf(q):
        # the dropped -(1/2k) log(2 pi k/p) term is <= 0 only from k >= p/(2 pi)
        return base if k0 >= p / (2.0 * math.pi) else math.inf
    inv_q = inverse(q)
    return base - float(gammaln(1.0 + inv_q)) - inv_q * (math.log(q) + 1.0) + q / (12.0 * k0 * k0)


def volume_ratio_root_envelope(p: float, q: float, k0: int) -> float:
    """Upper bound on sup_{k >= k0} (1/k) log VR_k for p <= q (B_p inside B_q, so never above 0)."""
    if p == q:
        return 0.0
    constant = volume_ratio_root_constant(p, q, k0)
    return min(0.0, constant - (inverse(p) - inverse(q)) * math.log(k0))
