# entrobound_core/sequences/exponent_pair.py
import math
from dataclasses import dataclass

from entrobound_core.errors import EqualExponentsError, ExponentBranchError


def inverse(exponent: float) -> float:
    """1/p with 1/inf treated as exactly 0."""
    return 0.0 if math.isinf(exponent) else 1.0 / exponent


def quasi_norm_constant(exponent: float) -> float:
    """C_p = max{1, 2^(1/p - 1)}; exactly 1 for p >= 1."""
    if exponent >= 1.0:
        return 1.0
    return 2.0 ** (inverse(exponent) - 1.0)


def format_exponent(exponent: float) -> str:
    return "inf" if math.isinf(exponent) else repr(float(exponent))


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float

    def __post_init__(self):
        for name, value in (("p", self.p), ("q", self.q)):
            if math.isnan(value) or value <= 0:
                raise ValueError(f"exponent {name} must lie in (0, inf], got {value}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def inv_p(self) -> float:
        return inverse(self.p)

    @property
    def inv_q(self) -> float:
        return inverse(self.q)

    @property
    def p_less_than_q(self) -> bool:
        return self.p < self.q

    @property
    def p_greater_than_q(self) -> bool:
        return self.p > self.q

    @property
    def equal(self) -> bool:
        return self.p == self.q

    @property
    def inv_s(self) -> float:
        if not self.p_less_than_q:
            raise ExponentBranchError(f"s is only defined for p < q (p={self.p}, q={self.q})")
        return self.inv_p - self.inv_q

    @property
    def s(self) -> float:
        return 1.0 / self.inv_s

    @property
    def inv_r(self) -> float:
        if not self.p_greater_than_q:
            raise ExponentBranchError(f"r is only defined for p > q (p={self.p}, q={self.q})")
        return self.inv_q - self.inv_p

    @property
    def r(self) -> float:
        return 1.0 / self.inv_r

    @property
    def c_p(self) -> float:
        return quasi_norm_constant(self.p)

    @property
    def c_q(self) -> float:
        return quasi_norm_constant(self.q)

    def require_distinct(self) -> "ExponentPair":
        if self.equal:
            raise EqualExponentsError(f"p and q must differ (both are {format_exponent(self.p)})")
        return self

    def to_dict(self) -> dict:
        data = {"p": format_exponent(self.p), "q": format_exponent(self.q)}
        if self.p_less_than_q:
            data["s"] = format_exponent(self.s)
        elif self.p_greater_than_q:
            data["r"] = format_exponent(self.r)
        return data
