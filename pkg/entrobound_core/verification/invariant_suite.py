# entrobound_core/verification/invariant_suite.py
"""Numerical invariants that every correct build must satisfy, with measured margins.

A positive margin means the invariant held with room to spare; agreement checks
report the fraction of agreeing cases instead.
"""
import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from entrobound_core.bounds.bound_curve import bound_curve
from entrobound_core.bounds.bound_forms import lower_bound
from entrobound_core.bounds.bound_result import BoundResult, FormRequest
from entrobound_core.bounds.volume import log_volume_unit_balls, volume_unit_ball
from entrobound_core.conditions.condition_checks import (
    check_alp,
    check_amp,
    check_doubling,
    check_exp_partial_sum,
    check_exp_shifted,
    check_exp_tail,
    check_geo_mean,
    check_tail_doubling,
    search_alm_incr_exponent,
    search_exp_base,
)
from entrobound_core.config_defs import (
    DEFAULT_PLATEAU_RTOL,
    DEFAULT_RTOL,
    DEFAULT_THREADS,
    DEFAULT_WINDOW,
    OracleConfig,
    ScanConfig,
)
from entrobound_core.errors import InvariantViolationError, SequenceDivergenceError, SpecParseError
from entrobound_core.oracle.covering import covering_bound_rhs, covering_upper, volume_lower_nd
from entrobound_core.oracle.entropy_bracket import entropy_bracket, finite_upper_bound
from entrobound_core.oracle.finite_diag import FiniteDiag
from entrobound_core.oracle.mc_volume import mc_volume
from entrobound_core.sequences.exponent_pair import ExponentPair, format_exponent
from entrobound_core.sequences.sequence_ops import tail
from entrobound_core.sequences.sequence_spec import ExpExp, ExpPoly, Geometric, PolyLog, Polynomial, SequenceSpec
from entrobound_core.verification.table1 import table1_matrix

logger = logging.getLogger("entrobound.verification.suite")

INF = math.inf

MATRIX_SPECS: Tuple[SequenceSpec, ...] = (
    Geometric(1.0, 2.0),
    Polynomial(1.0, 2.0),
    PolyLog(1.0, 1.0, 2.0),
    ExpPoly(1.0, 1.0),
    ExpExp(1.0, 0.5),
)
MATRIX_PAIRS: Tuple[Tuple[float, float], ...] = ((1.0, 2.0), (2.0, INF), (INF, 1.0), (2.0, 1.0))

# finite-dimensional weights for the oracle checks, all with k <= 2
ORACLE_WEIGHTS: Tuple[Tuple[float, ...], ...] = ((1.0,), (1.0, 1.0), (1.0, 0.5))
ORACLE_PAIRS: Tuple[Tuple[float, float], ...] = ((2.0, 2.0), (1.0, 2.0), (2.0, 1.0), (INF, INF), (1.0, 0.5))

VOLUME_CASES: Tuple[Tuple[float, int], ...] = tuple((p, k) for p in (1.0, 2.0, INF) for k in (2, 3))
VOLUME_SLOPE_PAIRS: Tuple[Tuple[float, float], ...] = ((1.0, 2.0), (2.0, INF), (INF, 1.0), (2.0, 1.0), (0.5, 1.0))
VOLUME_SLOPE_MAX_K = 1024
VOLUME_SLOPE_SPREAD = 2.0

TAIL_RECURRENCE_INDICES = (1, 2, 5, 10, 20, 50, 100)
TAIL_RECURRENCE_RTOL = 1e-8
SCALING_FACTOR = 3.0
SCALING_RTOL = 1e-12
MONOTONE_RTOL = 1e-12

EXP_RATIO_SPREAD = 1.5
AMP_RATIO_SPREAD = 3.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    cases: int
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "passed": self.passed,
            "margin": self.margin,
            "cases": self.cases,
            "counterexample": self.counterexample,
        }


class _Tally:
    """Running minimum margin plus the first failing case."""

    def __init__(self, name: str):
        self.name = name
        self.margin = INF
        self.cases = 0
        self.counterexample: Optional[Dict[str, Any]] = None

    def record(self, margin: float, case: Dict[str, Any], passed: Optional[bool] = None) -> None:
        self.cases += 1
        self.margin = min(self.margin, margin)
        ok = margin >= 0.0 if passed is None else passed
        if not ok and self.counterexample is None:
            self.counterexample = dict(case, margin=margin)
            logger.warning(f"{self.name}: violated at {case}")

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.counterexample is None, self.margin, self.cases, self.counterexample)


class _Agreement(_Tally):
    """Margin is the fraction of agreeing cases."""

    def __init__(self, name: str):
        super().__init__(name)
        self.agreeing = 0

    def agree(self, verdicts: Dict[str, Any], case: Dict[str, Any]) -> None:
        self.cases += 1
        if len(set(verdicts.values())) <= 1:
            self.agreeing += 1
        elif self.counterexample is None:
            self.counterexample = dict(case, verdicts=verdicts)
            logger.warning(f"{self.name}: disagreement at {case}: {verdicts}")

    def implies(self, premise: bool, conclusion: bool, case: Dict[str, Any]) -> None:
        self.agree({"implication": (not premise) or conclusion, "holds": True}, case)

    def result(self) -> CheckResult:
        margin = self.agreeing / self.cases if self.cases else 1.0
        return CheckResult(self.name, self.counterexample is None, margin, self.cases, self.counterexample)


def _pair_label(pair: ExponentPair) -> Dict[str, str]:
    return {"p": format_exponent(pair.p), "q": format_exponent(pair.q)}


def _relative_log_error(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(1.0, abs(expected))


def _spread_margin(log_ratios: np.ndarray, factor: float) -> float:
    """log(factor) minus the largest log distance of a ratio from the median ratio."""
    median = float(np.median(log_ratios))
    return math.log(factor) - float(np.max(np.abs(log_ratios - median)))


class InvariantSuite:
    """The full battery behind `entrobound verify`; quick mode shrinks the grids."""

    def __init__(
        self,
        quick: bool = False,
        window: int = DEFAULT_WINDOW,
        rtol: float = DEFAULT_RTOL,
        plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
        scan: ScanConfig = ScanConfig(),
        oracle: OracleConfig = OracleConfig(),
        threads: int = DEFAULT_THREADS,
    ):
        self.quick = quick
        self.window = window
        self.rtol = rtol
        self.plateau_rtol = plateau_rtol
        self.scan = scan
        self.oracle = oracle
        self.threads = threads
        top = 10 if quick else 20
        self.n_grid: List[int] = [2**j for j in range(0, top + 1, 2 if quick else 1)]
        self.dyadic_eps: Tuple[float, ...] = (0.5, 0.25) if quick else (0.5, 0.25, 0.125)
        self.bracket_ns: Tuple[int, ...] = (2, 3) if quick else (2, 3, 4)
        self.mc_samples = 200_000 if quick else oracle.mc_samples

    # --- case generators ---

    def _matrix_cases(self) -> List[Tuple[SequenceSpec, ExponentPair]]:
        cases = []
        for spec in MATRIX_SPECS:
            for p, q in MATRIX_PAIRS:
                pair = ExponentPair(p, q)
                if pair.p_greater_than_q and not spec.in_ell(pair.r):
                    continue
                cases.append((spec, pair))
        return cases

    def _oracle_diags(self) -> List[FiniteDiag]:
        return [FiniteDiag(sigma, p, q) for sigma in ORACLE_WEIGHTS for p, q in ORACLE_PAIRS]

    def _curve(self, spec: SequenceSpec, pair: ExponentPair, forms: Sequence[FormRequest]) -> List[BoundResult]:
        return bound_curve(spec, pair, self.n_grid, forms, self.rtol, self.scan, self.threads)

    # --- bounds ---

    def check_sandwich(self) -> CheckResult:
        tally = _Tally("sandwich")
        for spec, pair in self._matrix_cases():
            results = self._curve(spec, pair, (FormRequest.LB, FormRequest.UB_CONST))
            for lower, upper in zip(results[0::2], results[1::2]):
                slack = upper.value.log_value - lower.value.log_value
                tolerance = 1e-12 * max(1.0, abs(upper.value.log_value))
                case = {"spec": spec.describe(), **_pair_label(pair), "n": lower.n,
                        "log10_lower": lower.value.log10, "log10_upper": upper.value.log10}
                tally.record(slack, case, passed=slack >= -tolerance)
        return tally.result()

    def _forms_for(self, pair: ExponentPair) -> Tuple[FormRequest, ...]:
        if pair.p_less_than_q:
            return FormRequest.UB, FormRequest.LB, FormRequest.UB_CONST, FormRequest.OPT_EXP
        return FormRequest.UB, FormRequest.LB, FormRequest.UB_CONST, FormRequest.OPT_AMP, FormRequest.AMP_ENVELOPE

    def check_anti_monotonicity(self) -> CheckResult:
        tally = _Tally("anti-monotonicity")
        for spec, pair in self._matrix_cases():
            forms = self._forms_for(pair)
            results = self._curve(spec, pair, forms)
            for offset, form in enumerate(forms):
                series = results[offset::len(forms)]
                for before, after in zip(series, series[1:]):
                    drop = before.value.log_value - after.value.log_value
                    tolerance = MONOTONE_RTOL * max(1.0, abs(before.value.log_value))
                    case = {"spec": spec.describe(), **_pair_label(pair), "form": before.form.value,
                            "n": before.n, "next_n": after.n}
                    tally.record(drop, case, passed=drop >= -tolerance)
        return tally.result()

    def check_scaling(self) -> CheckResult:
        tally = _Tally("scaling")
        log_factor = math.log(SCALING_FACTOR)
        grid = self.n_grid[:: max(1, len(self.n_grid) // 4)]
        for spec, pair in self._matrix_cases():
            forms = self._forms_for(pair)
            base = bound_curve(spec, pair, grid, forms, self.rtol, self.scan, self.threads)
            moved = bound_curve(spec.scaled(SCALING_FACTOR), pair, grid, forms, self.rtol, self.scan, self.threads)
            for original, result in zip(base, moved):
                expected = original.value.log_value + log_factor
                error = _relative_log_error(result.value.log_value, expected)
                case = {"spec": spec.describe(), **_pair_label(pair), "form": original.form.value, "n": original.n}
                tally.record(SCALING_RTOL - error, case)
        return tally.result()

    def check_exp_optimality_ratio(self) -> CheckResult:
        tally = _Tally("exp-optimality-ratio")
        pair = ExponentPair(1.0, 2.0)
        for spec in (Geometric(1.0, 2.0), ExpPoly(1.0, 1.0)):
            results = self._curve(spec, pair, (FormRequest.UB, FormRequest.OPT_EXP))
            ratios = np.array([ub.value.log_value - opt.value.log_value for ub, opt in zip(results[0::2], results[1::2])])
            tally.record(_spread_margin(ratios, EXP_RATIO_SPREAD), {"spec": spec.describe(), **_pair_label(pair)})
        return tally.result()

    def check_amp_staircase(self) -> CheckResult:
        tally = _Tally("amp-staircase")
        pair = ExponentPair(2.0, 1.0)
        spec = PolyLog(1.0, 1.0, 2.0)
        grid = [n for n in self.n_grid if n >= 2]
        results = bound_curve(spec, pair, grid, (FormRequest.UB, FormRequest.OPT_AMP), self.rtol, self.scan, self.threads)
        ratios = np.array([ub.value.log_value - amp.value.log_value for ub, amp in zip(results[0::2], results[1::2])])
        tally.record(_spread_margin(ratios, AMP_RATIO_SPREAD), {"spec": spec.describe(), **_pair_label(pair)})
        return tally.result()

    # --- sequences ---

    def check_tail_recurrence(self) -> CheckResult:
        tally = _Tally("tail-recurrence")
        for spec in MATRIX_SPECS:
            for r in (1.0, 2.0):
                if not spec.in_ell(r):
                    continue
                for k in TAIL_RECURRENCE_INDICES:
                    head = r * tail(spec, k, r, self.rtol).log_value
                    rest = r * tail(spec, k + 1, r, self.rtol).log_value
                    rebuilt = float(np.logaddexp(rest, r * spec.log_sigma(k)))
                    error = abs(math.expm1(rebuilt - head))
                    tally.record(TAIL_RECURRENCE_RTOL - error, {"spec": spec.describe(), "r": r, "k": k})
        return tally.result()

    # --- conditions ---

    def check_exp_equivalences(self) -> CheckResult:
        tally = _Agreement("exp-equivalences")
        for spec in MATRIX_SPECS:
            verdicts = {
                "exp": search_exp_base(spec, self.window, self.plateau_rtol).holds,
                "shifted": check_exp_shifted(spec, self.window, self.plateau_rtol).holds,
                "partial-sum": check_exp_partial_sum(spec, 1.0, self.window, self.plateau_rtol).holds,
            }
            if spec.in_ell(1.0):
                verdicts["tail"] = check_exp_tail(spec, 1.0, self.rtol, self.window, self.plateau_rtol).holds
            tally.agree(verdicts, {"spec": spec.describe()})
        return tally.result()

    def check_doubling_equivalences(self) -> CheckResult:
        tally = _Agreement("doubling-equivalences")
        for spec in MATRIX_SPECS:
            verdicts = {
                "doubling": check_doubling(spec, self.window, self.plateau_rtol).holds,
                "alm-incr": search_alm_incr_exponent(spec, self.window, self.plateau_rtol).holds,
                "geo-mean": check_geo_mean(spec, self.window, self.plateau_rtol).holds,
            }
            tally.agree(verdicts, {"spec": spec.describe()})
        return tally.result()

    def check_condition_implications(self) -> CheckResult:
        """EXP implies ALP, EXP excludes AMP, AMP implies a doubling tail."""
        tally = _Agreement("condition-implications")
        radii = sorted({ExponentPair(p, q).r for p, q in MATRIX_PAIRS if p > q})
        for spec in MATRIX_SPECS:
            exp_holds = search_exp_base(spec, self.window, self.plateau_rtol).holds
            for r in radii:
                try:
                    alp = check_alp(spec, r, self.rtol, self.window, self.plateau_rtol).holds
                    amp = check_amp(spec, r, self.rtol, self.window, self.plateau_rtol).holds
                except SequenceDivergenceError:
                    continue
                case = {"spec": spec.describe(), "r": r}
                tally.implies(exp_holds, alp, dict(case, rule="EXP => ALP"))
                tally.implies(exp_holds, not amp, dict(case, rule="EXP excludes AMP"))
                if amp:
                    doubling = check_tail_doubling(spec, r, self.rtol, self.window, self.plateau_rtol).holds
                    tally.implies(amp, doubling, dict(case, rule="AMP => TAIL-DOUBLING"))
        return tally.result()

    def check_table1(self) -> CheckResult:
        tally = _Agreement("table1-matrix")
        for row in table1_matrix(self.window, self.rtol, self.plateau_rtol, self.threads):
            tally.agree({"measured": row.entries, "expected": row.expected}, {"spec": row.spec})
        return tally.result()

    # --- oracle ---

    def check_volume_mc(self) -> CheckResult:
        tally = _Tally("volume-monte-carlo")
        for p, k in VOLUME_CASES:
            exact = volume_unit_ball(p, k).value
            estimate, standard_error = mc_volume(p, k, self.mc_samples, self.oracle.seed)
            deviation = abs(estimate - exact)
            within_se = deviation <= 3.0 * standard_error + 1e-12 * exact
            within_rel = deviation <= 0.02 * exact
            case = {"p": format_exponent(p), "k": k, "exact": exact, "estimate": estimate, "standard_error": standard_error}
            tally.record(0.02 * exact - deviation, case, passed=within_se and within_rel)
        return tally.result()

    def check_volume_slope(self) -> CheckResult:
        tally = _Tally("volume-ratio-slope")
        dims = np.arange(1, VOLUME_SLOPE_MAX_K + 1, dtype=float)
        for p, q in VOLUME_SLOPE_PAIRS:
            pair = ExponentPair(p, q)
            roots = (log_volume_unit_balls(p, dims) - log_volume_unit_balls(q, dims)) / dims
            corrected = roots - (pair.inv_q - pair.inv_p) * np.log(dims)
            spread = float(corrected.max() - corrected.min())
            tally.record(VOLUME_SLOPE_SPREAD - spread, {**_pair_label(pair), "spread": spread})
        return tally.result()

    def check_covering_consistency(self) -> CheckResult:
        """volume_lower_nd(eps) <= covering_upper(eps) <= covering_bound_rhs(eps / 2)."""
        tally = _Tally("covering-consistency")
        for diag in self._oracle_diags():
            for eps in self.dyadic_eps:
                count = covering_upper(diag, 2.0 * eps, self.oracle.grid_resolution(2.0 * eps), self.oracle.max_grid_points)
                rhs = covering_bound_rhs(diag, eps).log_value
                floor = volume_lower_nd(diag, 2.0 * eps)
                case = {**diag.to_dict(), "eps": eps, "covering": count, "volume_lower": floor, "log_rhs": rhs}
                margin = rhs - math.log(count)
                tally.record(margin, case, passed=margin >= 0.0 and floor <= count)
        return tally.result()

    def check_finite_brackets(self) -> CheckResult:
        """The oracle bracket meets [lower_bound, finite_upper_bound] and the e_1 interval."""
        tally = _Tally("finite-brackets")
        for diag in self._oracle_diags():
            for n in (1,) + self.bracket_ns:
                bracket = entropy_bracket(diag, n, self.oracle)
                if n == 1:
                    formula_lo, formula_hi = diag.norm / diag.pair.c_q, diag.norm
                else:
                    formula_lo = lower_bound(diag.to_explicit(), diag.pair, n, self.scan).value.value
                    formula_hi = finite_upper_bound(diag, n)
                margin = min(formula_hi - bracket.lo, bracket.hi - formula_lo) / diag.norm
                case = {**diag.to_dict(), "n": n, "lo": bracket.lo, "hi": bracket.hi,
                        "formula_lo": formula_lo, "formula_hi": formula_hi}
                tally.record(margin, case, passed=bracket.lo <= formula_hi and formula_lo <= bracket.hi)
        return tally.result()

    # --- driver ---

    def checks(self) -> List[Tuple[str, Callable[[], CheckResult]]]:
        return [
            ("sandwich", self.check_sandwich),
            ("anti-monotonicity", self.check_anti_monotonicity),
            ("scaling", self.check_scaling),
            ("exp-optimality-ratio", self.check_exp_optimality_ratio),
            ("amp-staircase", self.check_amp_staircase),
            ("tail-recurrence", self.check_tail_recurrence),
            ("exp-equivalences", self.check_exp_equivalences),
            ("doubling-equivalences", self.check_doubling_equivalences),
            ("condition-implications", self.check_condition_implications),
            ("table1-matrix", self.check_table1),
            ("volume-monte-carlo", self.check_volume_mc),
            ("volume-ratio-slope", self.check_volume_slope),
            ("covering-consistency", self.check_covering_consistency),
            ("finite-brackets", self.check_finite_brackets),
        ]

    def run(self, only: Optional[Sequence[str]] = None) -> List[CheckResult]:
        known = [name for name, _ in self.checks()]
        unknown = sorted(set(only or ()) - set(known))
        if unknown:
            raise SpecParseError(f"unknown check(s) {', '.join(unknown)} (known: {', '.join(known)})")
        results = []
        for name, check in self.checks():
            if only is not None and name not in only:
                continue
            started = time.monotonic()
            outcome = check()
            elapsed = time.monotonic() - started
            logger.info(f"{name}: {'passed' if outcome.passed else 'FAILED'} over {outcome.cases} cases "
                        f"(margin {outcome.margin:.6g}, {elapsed:.2f}s)")
            results.append(outcome)
        return results


def require_all_passed(results: Sequence[CheckResult]) -> None:
    """Raises InvariantViolationError carrying the first counterexample."""
    for result in results:
        if not result.passed:
            raise InvariantViolationError(f"invariant '{result.name}' failed", {"check": result.name, **(result.counterexample or {})})
