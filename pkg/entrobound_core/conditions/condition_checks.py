# entrobound_core/conditions/condition_checks.py
"""Finite-window checks of the regularity conditions, with closed-form overrides for families.

Every check builds a per-index log ratio v_n, takes its running extremum over
n = 1..N and applies the plateau rule to that running extremum.
"""
import logging
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from entrobound_core.conditions import analytic_verdicts
from entrobound_core.conditions.condition_report import ConditionReport, Verdict, Witness
from entrobound_core.config_defs import DEFAULT_PLATEAU_RTOL, DEFAULT_RTOL, DEFAULT_WINDOW
from entrobound_core.sequences.sequence_ops import tail_sequence
from entrobound_core.sequences.sequence_spec import SequenceSpec

logger = logging.getLogger("entrobound.conditions")

EXP_BASE_GRID = tuple(2.0 ** (j / 8.0) for j in range(1, 65))
ALM_INCR_GRID = tuple(j / 4.0 for j in range(1, 65))

# beyond this log difference the relative change is reported as infinite
_MAX_LOG_STEP = 700.0


def relative_change(log_from: float, log_to: float) -> float:
    step = abs(log_to - log_from)
    if step > _MAX_LOG_STEP:
        return math.inf
    return math.expm1(step)


def plateau_verdict(running: np.ndarray, rtol: float = DEFAULT_PLATEAU_RTOL) -> Verdict:
    """HOLDS if the running extremum moved by less than rtol over (L/2, L],
    FAILS if it still moves over the last quarter, INCONCLUSIVE otherwise."""
    length = len(running)
    if length < 4:
        return Verdict.INCONCLUSIVE
    last = float(running[-1])
    if relative_change(float(running[length // 2 - 1]), last) < rtol:
        return Verdict.HOLDS
    if relative_change(float(running[length - length // 4 - 1]), last) >= rtol:
        return Verdict.FAILS
    return Verdict.INCONCLUSIVE


def _check_window(window: int, minimum: int = 2) -> int:
    if isinstance(window, bool) or int(window) != window or window < minimum:
        raise ValueError(f"window must be an integer >= {minimum}, got {window}")
    return int(window)


def window_log_sigma(spec: SequenceSpec, window: int) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """log(sigma_n) for n = 1..N, cut back to the finite, evaluable prefix."""
    limit = window
    notes = []
    for bound in (spec.max_index, spec.support_length):
        if bound is not None and bound < limit:
            limit = bound
            notes.append(f"window reduced to the {bound} available terms")
    logs = spec.log_sigma_range(1, limit + 1)
    finite = np.isfinite(logs)
    if not finite.all():
        cut = int(np.argmin(finite))
        logs = logs[:cut]
        notes.append(f"log(sigma_n) leaves the double range beyond n={cut}; window reduced")
    if len(logs) == 0:
        raise ValueError(f"{spec.describe()} has no finite terms to check")
    return logs, tuple(notes)


def _indices(length: int) -> np.ndarray:
    return np.arange(1, length + 1, dtype=float)


def _build_report(
    condition: str,
    values: np.ndarray,
    window: int,
    maximize: bool,
    analytic: Optional[bool],
    plateau_rtol: float,
    notes: Tuple[str, ...],
    partner: Optional[Callable[[int], int]] = None,
    index_of: Optional[Callable[[int], int]] = None,
    extra: Optional[Dict] = None,
) -> ConditionReport:
    """values[i] is the log ratio at position i; index_of maps a position to its witness n."""
    running = np.maximum.accumulate(values) if maximize else np.minimum.accumulate(values)
    position = int(np.argmax(values) if maximize else np.argmin(values))
    n = index_of(position) if index_of else position + 1
    k = partner(position) if partner else None
    witness = Witness(float(values[position]), n, k, dict(extra or {}))

    return _resolve(condition, plateau_verdict(running, plateau_rtol), analytic, window, witness, plateau_rtol, notes)


def _resolve(
    condition: str,
    numeric: Verdict,
    analytic: Optional[bool],
    window: int,
    witness: Witness,
    plateau_rtol: float,
    notes: Tuple[str, ...],
) -> ConditionReport:
    """The closed-form verdict wins when there is one; the window verdict is kept as a note."""
    if analytic is None:
        return ConditionReport(condition, numeric, window, witness, False, notes + (f"plateau rule rtol={plateau_rtol:g}",))
    verdict = Verdict.from_bool(analytic)
    if numeric is not verdict:
        notes = notes + (f"window verdict: {numeric.value}",)
    return ConditionReport(condition, verdict, window, witness, True, notes)


def format_parameter(value: float) -> str:
    return f"{value:.6g}"


def check_exp(
    spec: SequenceSpec, b: float, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """sup_{k<=n<=N} sigma_n b^n / (sigma_k b^k)."""
    if not (math.isfinite(b) and b > 1.0):
        raise ValueError(f"EXP base must be > 1, got {b}")
    _check_window(window)
    logs, notes = window_log_sigma(spec, window)
    weighted = logs + _indices(len(logs)) * math.log(b)
    values = weighted - np.minimum.accumulate(weighted)

    def partner(position: int) -> int:
        return int(np.argmin(weighted[: position + 1])) + 1

    return _build_report(
        f"EXP({format_parameter(b)})",
        values,
        len(logs),
        True,
        analytic_verdicts.exp_holds(spec, b),
        plateau_rtol,
        notes,
        partner=partner,
        extra={"b": b},
    )


def check_exp_shifted(
    spec: SequenceSpec, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """Smallest shift n0 <= N/2 with max_k sigma_{k+n0}/sigma_k = a < 1."""
    _check_window(window, 4)
    logs, notes = window_log_sigma(spec, window)
    length = len(logs)
    analytic = analytic_verdicts.exp_holds(spec)

    if length < 2:
        raise ValueError(f"window of {length} terms is too short for a shifted check")

    # without a contracting shift the witness is the n0 = 1 ratio
    numeric = Verdict.FAILS
    shift, ratios = 1, logs[1:] - logs[:-1]
    for candidate in range(1, length // 2 + 1):
        candidate_ratios = logs[candidate:] - logs[:-candidate]
        running = np.maximum.accumulate(candidate_ratios)
        if running[-1] < 0.0 and plateau_verdict(running, plateau_rtol) is Verdict.HOLDS:
            numeric = Verdict.HOLDS
            shift, ratios = candidate, candidate_ratios
            break

    position = int(np.argmax(ratios))
    witness = Witness(
        float(ratios[position]),
        position + 1 + shift,
        position + 1,
        {"n0": shift, "a": math.exp(float(ratios[position]))},
    )
    return _resolve("EXP-shifted", numeric, analytic, length, witness, plateau_rtol, notes)


def check_exp_partial_sum(
    spec: SequenceSpec, s: float = 1.0, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """max_n sigma_n v_n with v_n = (sum_{k<=n} sigma_k^-s)^(1/s)."""
    if not (math.isfinite(s) and s > 0):
        raise ValueError(f"s must be a positive finite real, got {s}")
    _check_window(window)
    logs, notes = window_log_sigma(spec, window)
    values = logs + np.logaddexp.accumulate(-s * logs) / s
    return _build_report(
        "EXP-partial-sum", values, len(logs), True, analytic_verdicts.exp_holds(spec), plateau_rtol, notes, extra={"s": s}
    )


def check_exp_tail(
    spec: SequenceSpec,
    r: float = 1.0,
    rtol: float = DEFAULT_RTOL,
    window: int = DEFAULT_WINDOW,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
) -> ConditionReport:
    """max_n tau_n / sigma_n."""
    _check_window(window)
    logs, notes = window_log_sigma(spec, window)
    analytic = analytic_verdicts.exp_holds(spec)
    values = tail_sequence(spec, len(logs), r, rtol) - logs
    return _build_report("EXP-tail", values, len(logs), True, analytic, plateau_rtol, notes, extra={"r": r})


def _halving(logs: np.ndarray) -> np.ndarray:
    half = len(logs) // 2
    return logs[1 : 2 * half : 2] - logs[:half]


def check_doubling(
    spec: SequenceSpec, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """min_{n<=N/2} sigma_2n / sigma_n."""
    _check_window(window, 4)
    logs, notes = window_log_sigma(spec, window)
    return _build_report(
        "DOUBLING",
        _halving(logs),
        len(logs),
        False,
        analytic_verdicts.doubling_holds(spec),
        plateau_rtol,
        notes,
        partner=lambda position: position + 1,
        index_of=lambda position: 2 * (position + 1),
    )


def check_tail_doubling(
    spec: SequenceSpec,
    r: float,
    rtol: float = DEFAULT_RTOL,
    window: int = DEFAULT_WINDOW,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
) -> ConditionReport:
    """min_{n<=N/2} tau_2n / tau_n."""
    _check_window(window, 4)
    logs, notes = window_log_sigma(spec, window)
    analytic = analytic_verdicts.tail_doubling_holds(spec, r)
    tails = tail_sequence(spec, len(logs), r, rtol)
    return _build_report(
        f"TAIL-DOUBLING({format_parameter(r)})",
        _halving(tails),
        len(logs),
        False,
        analytic,
        plateau_rtol,
        notes,
        partner=lambda position: position + 1,
        index_of=lambda position: 2 * (position + 1),
        extra={"r": r},
    )


def check_alm_incr(
    spec: SequenceSpec, alpha: float, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """inf_{k<=n<=N} sigma_n n^alpha / (sigma_k k^alpha)."""
    if not (math.isfinite(alpha) and alpha >= 0):
        raise ValueError(f"alpha must be a nonnegative real, got {alpha}")
    _check_window(window)
    logs, notes = window_log_sigma(spec, window)
    weighted = logs + alpha * np.log(_indices(len(logs)))
    values = weighted - np.maximum.accumulate(weighted)

    def partner(position: int) -> int:
        return int(np.argmax(weighted[: position + 1])) + 1

    return _build_report(
        f"ALM-INCR({format_parameter(alpha)})",
        values,
        len(logs),
        False,
        analytic_verdicts.alm_incr_holds(spec, alpha),
        plateau_rtol,
        notes,
        partner=partner,
        extra={"alpha": alpha},
    )


def check_geo_mean(
    spec: SequenceSpec, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """max_n GM_n / sigma_n."""
    _check_window(window)
    logs, notes = window_log_sigma(spec, window)
    values = np.cumsum(logs) / _indices(len(logs)) - logs
    return _build_report("GEO-MEAN", values, len(logs), True, analytic_verdicts.doubling_holds(spec), plateau_rtol, notes)


def _polynomial_tail_ratio(spec: SequenceSpec, r: float, rtol: float, window: int):
    logs, notes = window_log_sigma(spec, window)
    tails = tail_sequence(spec, len(logs), r, rtol)
    return tails - logs - np.log(_indices(len(logs))) / r, len(logs), notes


def check_alp(
    spec: SequenceSpec,
    r: float,
    rtol: float = DEFAULT_RTOL,
    window: int = DEFAULT_WINDOW,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
) -> ConditionReport:
    """max_n tau_n / (sigma_n n^(1/r))."""
    _check_window(window)
    analytic = analytic_verdicts.alp_holds(spec, r)
    values, length, notes = _polynomial_tail_ratio(spec, r, rtol, window)
    return _build_report(f"ALP({format_parameter(r)})", values, length, True, analytic, plateau_rtol, notes, extra={"r": r})


def check_amp(
    spec: SequenceSpec,
    r: float,
    rtol: float = DEFAULT_RTOL,
    window: int = DEFAULT_WINDOW,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
) -> ConditionReport:
    """min_n tau_n / (sigma_n n^(1/r))."""
    _check_window(window)
    analytic = analytic_verdicts.amp_holds(spec, r)
    values, length, notes = _polynomial_tail_ratio(spec, r, rtol, window)
    return _build_report(f"AMP({format_parameter(r)})", values, length, False, analytic, plateau_rtol, notes, extra={"r": r})


def search_exp_base(
    spec: SequenceSpec, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """check_exp at the largest grid base 2^(j/8) that holds; the smallest base when none does."""
    for b in reversed(EXP_BASE_GRID):
        report = check_exp(spec, b, window, plateau_rtol)
        if report.holds:
            logger.debug(f"{spec.describe()}: largest EXP grid base {b:.6g}")
            return _with_note(report, f"largest grid base that holds: b={b!r}")
    report = check_exp(spec, EXP_BASE_GRID[0], window, plateau_rtol)
    return _with_note(report, "no grid base 2^(j/8), j=1..64, holds")


def search_alm_incr_exponent(
    spec: SequenceSpec, window: int = DEFAULT_WINDOW, plateau_rtol: float = DEFAULT_PLATEAU_RTOL
) -> ConditionReport:
    """check_alm_incr at the smallest grid exponent j/4 that holds; the largest when none does."""
    for alpha in ALM_INCR_GRID:
        report = check_alm_incr(spec, alpha, window, plateau_rtol)
        if report.holds:
            return _with_note(report, f"smallest grid exponent that holds: alpha={alpha!r}")
    report = check_alm_incr(spec, ALM_INCR_GRID[-1], window, plateau_rtol)
    return _with_note(report, "no grid exponent j/4, j=1..64, holds")


def _with_note(report: ConditionReport, note: str) -> ConditionReport:
    return ConditionReport(report.condition, report.verdict, report.window, report.witness, report.analytic, report.notes + (note,))
