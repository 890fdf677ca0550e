# entrobound_core/bounds/bound_forms.py
"""Entropy-number bound formulas for D_sigma: l_p -> l_q, evaluated in log-domain."""
import logging
import math
from typing import Optional

import numpy as np

from entrobound_core.bounds.bound_result import BoundForm, BoundResult, Certificate
from entrobound_core.bounds.sup_scanner import ScanOutcome, initial_scan_length, scan_supremum
from entrobound_core.bounds.volume import (
    log_volume_ratio_roots,
    volume_ratio_root_constant,
    volume_ratio_root_envelope,
)
from entrobound_core.config_defs import DEFAULT_RTOL, ScanConfig
from entrobound_core.errors import ExponentBranchError, SequenceDivergenceError
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.log_real import LogReal
from entrobound_core.sequences.sequence_ops import log_geometric_means, tail, tail_sequence
from entrobound_core.sequences.sequence_spec import SequenceSpec, _check_index

logger = logging.getLogger("entrobound.bounds")

_DEFAULT_SCAN = ScanConfig()

# downward rounding of the volume lower bound, in log space
_LOWER_LOG_SLACK = 1e-12


class _SequenceWindow:
    """Lazily grown log(sigma_k), log(GM_k), log(tau_k) arrays for one scan."""

    def __init__(self, spec: SequenceSpec, r: Optional[float] = None, rtol: float = DEFAULT_RTOL):
        self.spec = spec
        self.r = r
        self.rtol = rtol
        self._log_sigma = np.empty(0)
        self._log_tau = np.empty(0)

    def log_sigma(self, count: int) -> np.ndarray:
        if len(self._log_sigma) < count:
            self._log_sigma = self.spec.log_sigma_range(1, count + 1)
        return self._log_sigma[:count]

    def log_gm(self, count: int) -> np.ndarray:
        return log_geometric_means(self.spec, count)

    def log_tau(self, count: int) -> np.ndarray:
        if len(self._log_tau) < count:
            self._log_tau = tail_sequence(self.spec, count, self.r, self.rtol)
        return self._log_tau[:count]


def _require_p_lt_q(pair: ExponentPair) -> None:
    if not pair.p_less_than_q:
        raise ExponentBranchError(f"this bound needs p < q, got p={pair.p}, q={pair.q}")


def _require_p_gt_q(spec: SequenceSpec, pair: ExponentPair) -> None:
    if not pair.p_greater_than_q:
        raise ExponentBranchError(f"this bound needs p > q, got p={pair.p}, q={pair.q}")
    if not spec.in_ell(pair.r):
        raise SequenceDivergenceError(f"{spec.describe()} is not in l_{pair.r}: D_sigma is unbounded")


def _to_result(form: BoundForm, n: int, outcome: ScanOutcome, log_offset: float = 0.0) -> BoundResult:
    certificate = Certificate.CERTIFIED if outcome.certified else Certificate.HEURISTIC
    if not outcome.certified:
        logger.debug(f"{form.value} at n={n}: heuristic stop at k={outcome.k_max}")
    value = LogReal(outcome.log_value + log_offset)
    return BoundResult(form, n, value, outcome.argmax_k, 1, outcome.k_max, certificate)


def _log_k(start: int, stop: int) -> np.ndarray:
    return np.log(np.arange(start, stop, dtype=float))


def _product_terms(window: _SequenceWindow, start: int, stop: int, factor) -> np.ndarray:
    """(1/k) sum_{i<=k} factor(k, log sigma_{1..k}) for each k in [start, stop)."""
    log_sigma = window.log_sigma(stop - 1)
    out = np.empty(stop - start)
    for offset, k in enumerate(range(start, stop)):
        out[offset] = float(np.sum(factor(k, log_sigma[:k]))) / k
    return out


def upper_bound_p_lt_q(spec: SequenceSpec, pair: ExponentPair, n: int, scan: ScanConfig = _DEFAULT_SCAN) -> BoundResult:
    """sup_k k^(-1/s) (prod_{i<=k} (sigma_i + k^(1/s) sigma_k) / n)^(1/k)."""
    _require_p_lt_q(pair)
    n = _check_index(n)
    inv_s, log_n = pair.inv_s, math.log(n)
    window = _SequenceWindow(spec)

    def factor(k: int, log_sigma: np.ndarray) -> np.ndarray:
        return np.logaddexp(log_sigma, inv_s * math.log(k) + log_sigma[-1])

    def terms(start: int, stop: int) -> np.ndarray:
        return _product_terms(window, start, stop, factor) - log_n / np.arange(start, stop) - inv_s * _log_k(start, stop)

    def envelope(k0: int) -> float:
        # every factor is <= (1 + k^(1/s)) sigma_i, and (k^(-1/s) + 1) GM_k is nonincreasing
        return math.log1p(k0 ** -inv_s) + float(window.log_gm(k0)[-1])

    outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_lt_q_max_k, envelope, spec.support_length)
    return _to_result(BoundForm.UB_P_LT_Q, n, outcome)


def upper_bound_p_gt_q(
    spec: SequenceSpec, pair: ExponentPair, n: int, rtol: float = DEFAULT_RTOL, scan: ScanConfig = _DEFAULT_SCAN
) -> BoundResult:
    """sup_k (prod_{i<=k} (tau_k + k^(1/r) sigma_i) / n)^(1/k)."""
    _require_p_gt_q(spec, pair)
    n = _check_index(n)
    inv_r, log_n = pair.inv_r, math.log(n)
    window = _SequenceWindow(spec, pair.r, rtol)

    def factor(k: int, log_sigma: np.ndarray) -> np.ndarray:
        return np.logaddexp(window.log_tau(k)[-1], inv_r * math.log(k) + log_sigma)

    def terms(start: int, stop: int) -> np.ndarray:
        window.log_tau(stop - 1)
        return _product_terms(window, start, stop, factor) - log_n / np.arange(start, stop)

    outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_gt_q_max_k, None, spec.support_length)
    return _to_result(BoundForm.UB_P_GT_Q, n, outcome)


def optimal_form_exp(spec: SequenceSpec, pair: ExponentPair, n: int, scan: ScanConfig = _DEFAULT_SCAN) -> BoundResult:
    """sup_k k^(-1/s) GM_k n^(-1/k)."""
    _require_p_lt_q(pair)
    n = _check_index(n)
    inv_s, log_n = pair.inv_s, math.log(n)
    window = _SequenceWindow(spec)

    def terms(start: int, stop: int) -> np.ndarray:
        ks = np.arange(start, stop, dtype=float)
        return window.log_gm(stop - 1)[start - 1:] - inv_s * np.log(ks) - log_n / ks

    def envelope(k0: int) -> float:
        return -inv_s * math.log(k0) + float(window.log_gm(k0)[-1])

    outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_lt_q_max_k, envelope, spec.support_length)
    return _to_result(BoundForm.OPT_EXP, n, outcome)


def optimal_form_alp(
    spec: SequenceSpec, pair: ExponentPair, n: int, rtol: float = DEFAULT_RTOL, scan: ScanConfig = _DEFAULT_SCAN
) -> BoundResult:
    """sup_k k^(1/r) GM_k n^(-1/k)."""
    _require_p_gt_q(spec, pair)
    n = _check_index(n)
    inv_r, log_n = pair.inv_r, math.log(n)
    window = _SequenceWindow(spec, pair.r, rtol)

    def terms(start: int, stop: int) -> np.ndarray:
        ks = np.arange(start, stop, dtype=float)
        return window.log_gm(stop - 1)[start - 1:] + inv_r * np.log(ks) - log_n / ks

    def envelope(k0: int) -> float:
        # with j = floor(k/2): prod sigma_i <= prod_{i<=j} sigma_i * sigma_j^(k-j), GM_j <= j^(-1/r) tau_1
        # and sigma_j <= (j/2)^(-1/r) tau_{floor(j/2)+1}, so k^(1/r) GM_k <= 6^(1/r) sqrt(tau_1 tau_m)
        if k0 < 2:
            return math.inf
        m0 = (k0 // 2) // 2 + 1
        log_tau = window.log_tau(m0)
        return inv_r * math.log(6.0) + 0.5 * (float(log_tau[0]) + float(log_tau[-1]))

    outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_gt_q_max_k, envelope, spec.support_length)
    return _to_result(BoundForm.OPT_ALP, n, outcome)


def optimal_form_amp(spec: SequenceSpec, pair: ExponentPair, n: int, rtol: float = DEFAULT_RTOL) -> BoundResult:
    """tau at index floor(log2 n) + 1."""
    _require_p_gt_q(spec, pair)
    n = _check_index(n)
    index = n.bit_length()
    value = tail(spec, index, pair.r, rtol)
    return BoundResult(BoundForm.OPT_AMP, n, value, index, index, index, Certificate.CERTIFIED)


def amp_envelope(
    spec: SequenceSpec, pair: ExponentPair, n: int, rtol: float = DEFAULT_RTOL, scan: ScanConfig = _DEFAULT_SCAN
) -> BoundResult:
    """sup_k tau_k n^(-1/k)."""
    _require_p_gt_q(spec, pair)
    n = _check_index(n)
    log_n = math.log(n)
    window = _SequenceWindow(spec, pair.r, rtol)

    def terms(start: int, stop: int) -> np.ndarray:
        return window.log_tau(stop - 1)[start - 1:] - log_n / np.arange(start, stop, dtype=float)

    def envelope(k0: int) -> float:
        return float(window.log_tau(k0)[-1])

    outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_gt_q_max_k, envelope, spec.support_length)
    return _to_result(BoundForm.AMP_ENVELOPE, n, outcome)


def lower_bound(spec: SequenceSpec, pair: ExponentPair, n: int, scan: ScanConfig = _DEFAULT_SCAN) -> BoundResult:
    """sup_k (vol B_p^k / vol B_q^k * sigma_1 ... sigma_k / n)^(1/k)."""
    n = _check_index(n)
    if pair.p_greater_than_q and not spec.in_ell(pair.r):
        raise SequenceDivergenceError(f"{spec.describe()} is not in l_{pair.r}: D_sigma is unbounded")
    log_n = math.log(n)
    window = _SequenceWindow(spec)
    roots = {"values": np.empty(0)}

    def log_roots(count: int) -> np.ndarray:
        if len(roots["values"]) < count:
            roots["values"] = log_volume_ratio_roots(pair.p, pair.q, max(count, 2 * len(roots["values"])))
        return roots["values"][:count]

    def terms(start: int, stop: int) -> np.ndarray:
        ks = np.arange(start, stop, dtype=float)
        return log_roots(stop - 1)[start - 1:] + window.log_gm(stop - 1)[start - 1:] - log_n / ks

    envelope = None
    max_k = scan.p_gt_q_max_k
    if pair.p <= pair.q:
        max_k = scan.p_lt_q_max_k

        def envelope(k0: int) -> float:
            return volume_ratio_root_envelope(pair.p, pair.q, k0) + float(window.log_gm(k0)[-1])

    outcome = scan_supremum(terms, _initial_k(n, scan), max_k, envelope, spec.support_length)
    return _to_result(BoundForm.LB_VOLUME, n, outcome, -_LOWER_LOG_SLACK)


def upper_bound_with_constants(
    spec: SequenceSpec, pair: ExponentPair, n: int, rtol: float = DEFAULT_RTOL, scan: ScanConfig = _DEFAULT_SCAN
) -> BoundResult:
    """The fully explicit upper bounds carrying the 4 C_p C_q prefactor.

    p < q: 4 C_p C_q sup_k (VR_k prod (2 C_q sigma_i + k^(1/s) sigma_k) / n)^(1/k)
    p > q: 4 C_p C_q sup_k (prod (tau_k + 2 C_p k^(1/r) sigma_i) / n)^(1/k)
    """
    n = _check_index(n)
    pair.require_distinct()
    log_n = math.log(n)
    log_prefactor = math.log(4.0 * pair.c_p * pair.c_q)

    if pair.p_less_than_q:
        inv_s = pair.inv_s
        log_two_cq = math.log(2.0 * pair.c_q)
        window = _SequenceWindow(spec)

        def factor(k: int, log_sigma: np.ndarray) -> np.ndarray:
            return np.logaddexp(log_two_cq + log_sigma, inv_s * math.log(k) + log_sigma[-1])

        def terms(start: int, stop: int) -> np.ndarray:
            roots = log_volume_ratio_roots(pair.p, pair.q, stop - 1)[start - 1:]
            products = _product_terms(window, start, stop, factor)
            return log_prefactor + roots + products - log_n / np.arange(start, stop)

        def envelope(k0: int) -> float:
            # VR_k^(1/k) (2 C_q + k^(1/s)) <= 2 C_q e^(E(k0)) + e^(C(k0)) for k >= k0
            constant = volume_ratio_root_constant(pair.p, pair.q, k0)
            if math.isinf(constant):
                return math.inf
            root_bound = volume_ratio_root_envelope(pair.p, pair.q, k0)
            mixed = float(np.logaddexp(log_two_cq + root_bound, constant))
            return log_prefactor + mixed + float(window.log_gm(k0)[-1])

        outcome = scan_supremum(terms, _initial_k(n, scan), scan.p_lt_q_max_k, envelope, spec.support_length)
        return _to_result(BoundForm.UB_CONST_P_LT_Q, n, outcome)

    _require_p_gt_q(spec, pair)
    inv_r = pair.inv_r
    log_two_cp = math.log(2.0 * pair.c_p)
    window = _SequenceWindow(spec, pair.r, rtol)

    def factor_gt(k: int, log_sigma: np.ndarray) -> np.ndarray:
        return np.logaddexp(window.log_tau(k)[-1], log_two_cp + inv_r * math.log(k) + log_sigma)

    def terms_gt(start: int, stop: int) -> np.ndarray:
        window.log_tau(stop - 1)
        return log_prefactor + _product_terms(window, start, stop, factor_gt) - log_n / np.arange(start, stop)

    outcome = scan_supremum(terms_gt, _initial_k(n, scan), scan.p_gt_q_max_k, None, spec.support_length)
    return _to_result(BoundForm.UB_CONST_P_GT_Q, n, outcome)


def _initial_k(n: int, scan: ScanConfig) -> int:
    return initial_scan_length(n, scan.p_gt_q_min_k, scan.p_gt_q_log_factor)
