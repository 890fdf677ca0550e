# entrobound_core/sequences/sequence_ops.py
import logging
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from entrobound_core.config_defs import DEFAULT_RTOL, DEFAULT_TAIL_INITIAL_WINDOW, DEFAULT_TAIL_MAX_TERMS
from entrobound_core.errors import (
    IndexOutOfRangeError,
    PrecisionNotReachedError,
    SequenceDivergenceError,
)
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.log_real import LogReal
from entrobound_core.sequences.sequence_spec import SequenceSpec, _check_index

logger = logging.getLogger("entrobound.sequences.ops")

_CHUNK = 1 << 20
_PREFIX_CACHE_ENTRIES = 64


@dataclass(frozen=True)
class TailEstimate:
    """tau_k together with the certified bracket on tau_k^r it was taken from."""

    k: int
    r: float
    value: LogReal
    log_lower_power: float
    log_upper_power: float
    terms_summed: int
    exact: bool

    @property
    def lower(self) -> LogReal:
        return LogReal(self.log_lower_power / self.r)

    @property
    def upper(self) -> LogReal:
        return LogReal(self.log_upper_power / self.r)

    @property
    def log_power(self) -> float:
        return self.value.log_value * self.r

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "log10_value": self.value.log10,
            "value": self.value.linear_or_none,
            "log10_lower": self.lower.log10,
            "log10_upper": self.upper.log10,
            "terms_summed": self.terms_summed,
            "exact": self.exact,
        }


def _validate_r_rtol(r: float, rtol: float) -> None:
    if not (math.isfinite(r) and r > 0):
        raise ValueError(f"r must be a positive finite real, got {r}")
    if not 0.0 < rtol < 1.0:
        raise ValueError(f"rtol must lie in (0, 1), got {rtol}")


def _power_tolerance(r: float, rtol: float) -> float:
    """Largest relative error of tau^r that keeps tau within rtol on both sides."""
    upward = math.expm1(r * math.log1p(rtol))
    downward = -math.expm1(r * math.log1p(-rtol))
    return min(upward, downward)


def tail_bracket(
    spec: SequenceSpec,
    k: int,
    r: float,
    rtol: float = DEFAULT_RTOL,
    initial_window: int = DEFAULT_TAIL_INITIAL_WINDOW,
    max_terms: int = DEFAULT_TAIL_MAX_TERMS,
) -> TailEstimate:
    """tau_k = (sum_{n>=k} sigma_n^r)^(1/r) with its certified bracket."""
    k = _check_index(k)
    _validate_r_rtol(r, rtol)
    if not spec.in_ell(r):
        raise SequenceDivergenceError(f"{spec.describe()} is not in l_{r}: tail sums diverge")

    closed = spec.log_tail_power_closed_form(k, r)
    if closed is not None:
        return TailEstimate(k, r, LogReal(closed / r), closed, closed, 0, True)

    log_head = r * spec.log_sigma(k)
    if log_head == -math.inf:
        return TailEstimate(k, r, LogReal.zero(), -math.inf, -math.inf, 0, True)

    # every linear quantity below is scaled by sigma_k^-r
    tolerance = _power_tolerance(r, rtol)
    partial = 0.0
    next_index = k
    window = max(1, initial_window)
    while True:
        stop = k + window
        for chunk_start in range(next_index, stop, _CHUNK):
            chunk_stop = min(stop, chunk_start + _CHUNK)
            logs = spec.log_sigma_range(chunk_start, chunk_stop)
            partial += float(np.sum(np.exp(r * logs - log_head)))
        next_index = stop

        log_lo, log_hi = spec.remainder_log_bracket(stop, r)
        lower = partial + math.exp(log_lo - log_head)
        upper = partial + math.exp(log_hi - log_head)
        half_width = 0.5 * (upper - lower)
        if half_width <= tolerance * lower:
            middle = 0.5 * (lower + upper)
            log_mid = log_head + math.log(middle)
            logger.debug(f"tail {spec.describe()} k={k} r={r}: converged with {window} terms")
            return TailEstimate(
                k, r, LogReal(log_mid / r), log_head + math.log(lower), log_head + math.log(upper), window, False
            )
        if window >= max_terms:
            raise PrecisionNotReachedError(
                f"tail of {spec.describe()} at k={k}, r={r}: relative error {half_width / lower:.3g} "
                f"after {window} terms exceeds rtol={rtol}"
            )
        window = min(2 * window, max_terms)


def tail(spec: SequenceSpec, k: int, r: float, rtol: float = DEFAULT_RTOL) -> LogReal:
    return tail_bracket(spec, k, r, rtol).value


def tail_sequence(spec: SequenceSpec, count: int, r: float, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """log(tau_k) for k = 1..count from one certified tau_count and the backward recurrence."""
    count = _check_index(count)
    last = tail_bracket(spec, count, r, rtol)
    head_logs = r * spec.log_sigma_range(1, count)
    stacked = np.concatenate(([last.log_power], head_logs[::-1]))
    with np.errstate(invalid="ignore"):
        powers = np.logaddexp.accumulate(stacked)[::-1]
    return powers / r


def partial_sum_inv(spec: SequenceSpec, n: int, s: float) -> LogReal:
    """v_n = (sum_{k<=n} sigma_k^-s)^(1/s)."""
    n = _check_index(n)
    if not (math.isfinite(s) and s > 0):
        raise ValueError(f"s must be a positive finite real, got {s}")
    return LogReal(float(log_partial_sums_inv(spec, n, s)[-1]))


def log_partial_sums_inv(spec: SequenceSpec, count: int, s: float) -> np.ndarray:
    """log(v_n) for n = 1..count."""
    logs = spec.log_sigma_range(1, count + 1)
    if np.any(np.isneginf(logs)):
        raise IndexOutOfRangeError(f"{spec.describe()} has zero entries below {count}; inverse partial sums are infinite")
    return np.logaddexp.accumulate(-s * logs) / s


class _PrefixLogSums:
    """Thread-safe cache of cumulative log(sigma) sums, grown by doubling."""

    def __init__(self, max_entries: int = _PREFIX_CACHE_ENTRIES):
        self._lock = threading.Lock()
        self._store: "OrderedDict[SequenceSpec, np.ndarray]" = OrderedDict()
        self._max_entries = max_entries

    def get(self, spec: SequenceSpec, count: int) -> np.ndarray:
        with self._lock:
            cached = self._store.get(spec)
            if cached is not None and len(cached) >= count:
                self._store.move_to_end(spec)
                return cached[:count]

        have = 0 if cached is None else len(cached)
        target = max(count, 2 * have)
        limit = spec.max_index
        if limit is not None and count <= limit:
            target = min(target, limit)
        new_logs = spec.log_sigma_range(have + 1, target + 1)
        offset = 0.0 if cached is None else cached[-1]
        with np.errstate(invalid="ignore"):
            extension = offset + np.cumsum(new_logs)
        grown = extension if cached is None else np.concatenate((cached, extension))
        grown.setflags(write=False)

        with self._lock:
            current = self._store.get(spec)
            if current is None or len(current) < len(grown):
                self._store[spec] = grown
            self._store.move_to_end(spec)
            while len(self._store) > self._max_entries:
                self._store.popitem(last=False)
        return grown[:count]

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


_prefix_cache = _PrefixLogSums()


def log_prefix_sums(spec: SequenceSpec, count: int) -> np.ndarray:
    """sum_{i<=k} log(sigma_i) for k = 1..count."""
    return _prefix_cache.get(spec, _check_index(count))


def log_geometric_means(spec: SequenceSpec, count: int) -> np.ndarray:
    """log(GM_k) for k = 1..count."""
    prefix = log_prefix_sums(spec, count)
    return prefix / np.arange(1, count + 1, dtype=float)


def geometric_mean(spec: SequenceSpec, k: int) -> LogReal:
    """GM_k = (sigma_1 ... sigma_k)^(1/k)."""
    k = _check_index(k)
    return LogReal(float(log_prefix_sums(spec, k)[-1] / k))


def operator_norm(spec: SequenceSpec, pair: ExponentPair, rtol: float = DEFAULT_RTOL) -> LogReal:
    """||D_sigma: l_p -> l_q||: sigma_1 for p <= q, ||sigma||_r for p > q."""
    if pair.p_greater_than_q:
        return tail(spec, 1, pair.r, rtol)
    return spec.eval(1)


def first_entropy_bracket(spec: SequenceSpec, pair: ExponentPair, rtol: float = DEFAULT_RTOL) -> Tuple[LogReal, LogReal]:
    """(||D||/C_q, ||D||), which contains e_1(D_sigma)."""
    norm = operator_norm(spec, pair, rtol)
    return norm / pair.c_q, norm


