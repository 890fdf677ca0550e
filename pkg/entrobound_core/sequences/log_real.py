# entrobound_core/sequences/log_real.py
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np
from scipy.special import logsumexp

_LN10 = math.log(10.0)
# largest/smallest natural logs whose exp() is a normal double
_MAX_LINEAR_LOG = math.log(np.finfo(float).max)
_MIN_LINEAR_LOG = math.log(np.finfo(float).tiny)


@dataclass(frozen=True, order=True)
class LogReal:
    """A nonnegative real carried by its natural logarithm; -inf is exactly 0."""

    log_value: float

    def __post_init__(self):
        value = float(self.log_value)
        if math.isnan(value) or value == math.inf:
            raise ValueError(f"LogReal log_value must be finite or -inf, got {self.log_value}")
        object.__setattr__(self, "log_value", value)

    @classmethod
    def from_value(cls, value: float) -> "LogReal":
        if value < 0 or math.isnan(value) or math.isinf(value):
            raise ValueError(f"LogReal needs a finite nonnegative value, got {value}")
        if value == 0:
            return cls(-math.inf)
        return cls(math.log(value))

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(-math.inf)

    @classmethod
    def one(cls) -> "LogReal":
        return cls(0.0)

    @classmethod
    def sum(cls, terms: Iterable["LogReal"]) -> "LogReal":
        logs = [t.log_value for t in terms]
        if not logs or all(v == -math.inf for v in logs):
            return cls.zero()
        return cls(float(logsumexp(logs)))

    @property
    def is_zero(self) -> bool:
        return self.log_value == -math.inf

    @property
    def value(self) -> float:
        """Linear value; underflows to 0.0 and overflows to inf like exp()."""
        if self.log_value > _MAX_LINEAR_LOG:
            return math.inf
        return math.exp(self.log_value)

    @property
    def log10(self) -> float:
        return self.log_value / _LN10

    @property
    def linear_or_none(self) -> Optional[float]:
        """Linear value when it is a normal double (or exactly zero), else None."""
        if self.is_zero:
            return 0.0
        if _MIN_LINEAR_LOG <= self.log_value <= _MAX_LINEAR_LOG:
            return math.exp(self.log_value)
        return None

    def __mul__(self, other: Union["LogReal", float]) -> "LogReal":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return LogReal.zero()
        return LogReal(self.log_value + other.log_value)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["LogReal", float]) -> "LogReal":
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("LogReal division by zero")
        if self.is_zero:
            return LogReal.zero()
        return LogReal(self.log_value - other.log_value)

    def __add__(self, other: Union["LogReal", float]) -> "LogReal":
        other = _coerce(other)
        return LogReal(float(np.logaddexp(self.log_value, other.log_value)))

    __radd__ = __add__

    def __pow__(self, exponent: float) -> "LogReal":
        if exponent < 0 and self.is_zero:
            raise ZeroDivisionError("negative power of zero")
        if exponent == 0:
            return LogReal.one()
        if self.is_zero:
            return LogReal.zero()
        return LogReal(self.log_value * exponent)

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"LogReal(log_value={self.log_value!r})"


def _coerce(other: Union[LogReal, float, int]) -> LogReal:
    if isinstance(other, LogReal):
        return other
    return LogReal.from_value(float(other))
