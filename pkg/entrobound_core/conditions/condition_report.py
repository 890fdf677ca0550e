# entrobound_core/conditions/condition_report.py
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from entrobound_core.sequences.log_real import LogReal


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def from_bool(cls, holds: bool) -> "Verdict":
        return cls.HOLDS if holds else cls.FAILS


@dataclass(frozen=True)
class Witness:
    """The measured extremal ratio (as a log) and the indices attaining it."""

    log_ratio: float
    n: int
    k: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.log_ratio):
            raise ValueError(f"witness ratio must be finite and positive, got log {self.log_ratio}")

    @property
    def ratio(self) -> Optional[float]:
        return LogReal(self.log_ratio).linear_or_none

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"log_ratio": self.log_ratio, "ratio": self.ratio, "n": self.n}
        if self.k is not None:
            data["k"] = self.k
        data.update(self.extra)
        return data


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    verdict: Verdict
    window: int
    witness: Optional[Witness]
    analytic: bool
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.window < 1:
            raise ValueError(f"window must be positive, got {self.window}")
        if self.analytic and self.verdict is Verdict.INCONCLUSIVE:
            raise ValueError(f"{self.condition}: analytic verdicts are never inconclusive")
        if self.witness is not None:
            for index in (self.witness.n, self.witness.k):
                if index is not None and not 1 <= index <= self.window:
                    raise ValueError(f"{self.condition}: witness index {index} outside [1, {self.window}]")

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": self.condition,
            "verdict": self.verdict.value,
            "window": self.window,
            "analytic": self.analytic,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "notes": list(self.notes),
        }
