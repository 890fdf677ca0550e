# entrobound_core/verification/table1.py
"""The EXP / ALP / AMP matrix for the three exponential-type families."""
import concurrent.futures
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from entrobound_core.conditions.condition_checks import check_alp, check_amp, search_exp_base
from entrobound_core.conditions.condition_report import ConditionReport
from entrobound_core.config_defs import DEFAULT_PLATEAU_RTOL, DEFAULT_RTOL, DEFAULT_THREADS, DEFAULT_WINDOW
from entrobound_core.errors import SequenceDivergenceError
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.sequence_spec import ExpExp, ExpLog, ExpPoly, SequenceSpec

logger = logging.getLogger("entrobound.verification.table1")

TABLE1_LAMBDAS = (0.5, 1.0, 2.0)
TABLE1_A = 1.0
TABLE1_P = 2.0
TABLE1_Q = 1.0

YES = "yes"
NO = "no"
UNBOUNDED = "unbounded"

# (family, lambda) -> expected (EXP, ALP, AMP)
EXPECTED_ENTRIES: Dict[Tuple[str, float], Tuple[str, str, str]] = {
    ("explog", 0.5): (NO, UNBOUNDED, UNBOUNDED),
    ("explog", 1.0): (NO, YES, YES),
    ("explog", 2.0): (NO, YES, NO),
    ("exppoly", 0.5): (NO, YES, NO),
    ("exppoly", 1.0): (YES, YES, NO),
    ("exppoly", 2.0): (YES, YES, NO),
    ("expexp", 0.5): (YES, YES, NO),
    ("expexp", 1.0): (YES, YES, NO),
    ("expexp", 2.0): (YES, YES, NO),
}

_FAMILIES = (("explog", ExpLog), ("exppoly", ExpPoly), ("expexp", ExpExp))


def _entry(report: Optional[ConditionReport]) -> str:
    if report is None:
        return UNBOUNDED
    return YES if report.holds else NO


@dataclass(frozen=True)
class Table1Row:
    family: str
    lam: float
    spec: str
    exp: str
    alp: str
    amp: str
    expected: Tuple[str, str, str]
    note: Optional[str] = None

    @property
    def entries(self) -> Tuple[str, str, str]:
        return self.exp, self.alp, self.amp

    @property
    def matches(self) -> bool:
        return self.entries == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "lambda": self.lam,
            "spec": self.spec,
            "exp": self.exp,
            "alp": self.alp,
            "amp": self.amp,
            "expected_exp": self.expected[0],
            "expected_alp": self.expected[1],
            "expected_amp": self.expected[2],
            "match": self.matches,
            "note": self.note,
        }


def _row(
    family: str, lam: float, spec: SequenceSpec, pair: ExponentPair, window: int, rtol: float, plateau_rtol: float
) -> Table1Row:
    exp_report = search_exp_base(spec, window, plateau_rtol)
    try:
        alp_report: Optional[ConditionReport] = check_alp(spec, pair.r, rtol, window, plateau_rtol)
        amp_report: Optional[ConditionReport] = check_amp(spec, pair.r, rtol, window, plateau_rtol)
    except SequenceDivergenceError as e:
        logger.info(f"{spec.describe()}: {e}")
        alp_report = amp_report = None

    note = None
    if family == "explog" and lam == 1.0:
        note = "reduces to polynomial decay"
    elif alp_report is None:
        note = f"sigma is not in l_{pair.r:g}"
    return Table1Row(
        family,
        lam,
        spec.describe(),
        _entry(exp_report),
        _entry(alp_report),
        _entry(amp_report),
        EXPECTED_ENTRIES[(family, lam)],
        note,
    )


def table1_matrix(
    window: int = DEFAULT_WINDOW,
    rtol: float = DEFAULT_RTOL,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
    threads: int = DEFAULT_THREADS,
) -> List[Table1Row]:
    """Rows in family order (ExpLog, ExpPoly, ExpExp), lambda ascending, at a=1 and (p, q) = (2, 1)."""
    pair = ExponentPair(TABLE1_P, TABLE1_Q)
    jobs = [(family, lam, constructor(TABLE1_A, lam)) for family, constructor in _FAMILIES for lam in TABLE1_LAMBDAS]
    if threads <= 1:
        rows = [_row(family, lam, spec, pair, window, rtol, plateau_rtol) for family, lam, spec in jobs]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=min(threads, len(jobs))) as executor:
            futures = [
                executor.submit(_row, family, lam, spec, pair, window, rtol, plateau_rtol) for family, lam, spec in jobs
            ]
            rows = [future.result() for future in futures]

    mismatches = [row for row in rows if not row.matches]
    for row in mismatches:
        logger.warning(f"matrix mismatch for {row.spec}: got {row.entries}, expected {row.expected}")
    return rows
