# entrobound_core/bounds/bound_result.py
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

from entrobound_core.errors import SpecParseError
from entrobound_core.sequences.log_real import LogReal


class BoundForm(Enum):
    UB_P_LT_Q = "UB-p<q"
    UB_P_GT_Q = "UB-p>q"
    OPT_EXP = "OPT-EXP"
    OPT_ALP = "OPT-ALP"
    OPT_AMP = "OPT-AMP"
    LB_VOLUME = "LB-volume"
    UB_CONST_P_LT_Q = "UB-const-p<q"
    UB_CONST_P_GT_Q = "UB-const-p>q"
    AMP_ENVELOPE = "AMP-envelope"


class Certificate(Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


class FormRequest(Enum):
    """Bound forms as requested on the command line; 'ub' and 'ub-const' resolve by branch."""

    UB = "ub"
    LB = "lb"
    UB_CONST = "ub-const"
    OPT_EXP = "opt-exp"
    OPT_ALP = "opt-alp"
    OPT_AMP = "opt-amp"
    AMP_ENVELOPE = "amp-envelope"

    @classmethod
    def from_string(cls, value: str) -> "FormRequest":
        try:
            return cls(value.strip().lower())
        except ValueError:
            known = ", ".join(member.value for member in cls)
            raise SpecParseError(f"unknown bound form '{value}' (known: {known})")


@dataclass(frozen=True)
class BoundResult:
    form: BoundForm
    n: int
    value: LogReal
    argmax_k: int
    k_min: int
    k_max: int
    certificate: Certificate

    def __post_init__(self):
        if not self.k_min <= self.argmax_k <= self.k_max:
            raise ValueError(f"argmax_k={self.argmax_k} outside scanned range [{self.k_min}, {self.k_max}]")

    @property
    def certified(self) -> bool:
        return self.certificate is Certificate.CERTIFIED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "form": self.form.value,
            "log10_value": self.value.log10,
            "value": self.value.linear_or_none,
            "argmax_k": self.argmax_k,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "certificate": self.certificate.value,
        }
