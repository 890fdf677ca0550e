# entrobound_core/oracle/finite_diag.py
import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from entrobound_core.errors import DimensionCapError
from entrobound_core.sequences.exponent_pair import ExponentPair, format_exponent
from entrobound_core.sequences.sequence_spec import Explicit, SequenceSpec, TailModel

MAX_ORACLE_DIMENSION = 3


def lq_norm(vectors: np.ndarray, q: float) -> np.ndarray:
    """||x||_q over the last axis; a quasi-norm for q < 1."""
    magnitudes = np.abs(np.asarray(vectors, dtype=float))
    if math.isinf(q):
        return magnitudes.max(axis=-1)
    return (magnitudes**q).sum(axis=-1) ** (1.0 / q)


def in_unit_ball(vectors: np.ndarray, p: float) -> np.ndarray:
    """sum |x_i|^p <= 1 (max |x_i| <= 1 for p = inf), compared exactly."""
    magnitudes = np.abs(np.atleast_2d(vectors))
    if math.isinf(p):
        return magnitudes.max(axis=-1) <= 1.0
    return (magnitudes**p).sum(axis=-1) <= 1.0


@dataclass(frozen=True)
class FiniteDiag:
    """D_sigma: l_p^k -> l_q^k for k <= 3."""

    sigma: Tuple[float, ...]
    p: float
    q: float

    def __post_init__(self):
        sigma = tuple(float(v) for v in self.sigma)
        if not 1 <= len(sigma) <= MAX_ORACLE_DIMENSION:
            raise DimensionCapError(f"the oracle works in dimensions 1..{MAX_ORACLE_DIMENSION}, got k={len(sigma)}")
        for i, value in enumerate(sigma):
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"sigma_{i + 1} must be positive and finite, got {value}")
            if i and value > sigma[i - 1]:
                raise ValueError(f"sigma must be nonincreasing: sigma_{i + 1}={value} > sigma_{i}={sigma[i - 1]}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "_pair", ExponentPair(self.p, self.q))
        object.__setattr__(self, "p", self._pair.p)
        object.__setattr__(self, "q", self._pair.q)

    @classmethod
    def from_spec(cls, spec: SequenceSpec, k: int, p: float, q: float) -> "FiniteDiag":
        if not 1 <= k <= MAX_ORACLE_DIMENSION:
            raise DimensionCapError(f"the oracle works in dimensions 1..{MAX_ORACLE_DIMENSION}, got k={k}")
        return cls(tuple(float(v) for v in np.exp(spec.log_sigma_range(1, k + 1))), p, q)

    @property
    def k(self) -> int:
        return len(self.sigma)

    @property
    def pair(self) -> ExponentPair:
        return self._pair

    @property
    def sigma_array(self) -> np.ndarray:
        return np.array(self.sigma)

    @property
    def log_det(self) -> float:
        return float(np.sum(np.log(self.sigma_array)))

    @property
    def norm(self) -> float:
        """||D_sigma||: max sigma_i for p <= q, ||sigma||_r for p > q."""
        if self.pair.p_greater_than_q:
            return float(lq_norm(self.sigma_array, self.pair.r))
        return self.sigma[0]

    @property
    def identity_norm(self) -> float:
        """||id: l_q^k -> l_p^k|| = k^max(0, 1/p - 1/q)."""
        return self.k ** max(0.0, self.pair.inv_p - self.pair.inv_q)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Membership in D_sigma B_p^k."""
        return in_unit_ball(np.atleast_2d(points) / self.sigma_array, self.p)

    def to_explicit(self) -> Explicit:
        """The same weights as an infinite sequence with a zero tail."""
        return Explicit(self.sigma, TailModel.zero())

    def to_dict(self) -> Dict[str, Any]:
        return {"sigma": list(self.sigma), "p": format_exponent(self.p), "q": format_exponent(self.q), "k": self.k}


@dataclass(frozen=True)
class CoveringEstimate:
    epsilon: float
    n_upper: int
    n_lower: int
    grid_resolution: float
    seed: int

    def __post_init__(self):
        if not 1 <= self.n_lower <= self.n_upper:
            raise ValueError(f"covering estimate needs 1 <= n_lower <= n_upper, got {self.n_lower}, {self.n_upper}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "n_lower": self.n_lower,
            "n_upper": self.n_upper,
            "grid_resolution": self.grid_resolution,
            "seed": self.seed,
        }
