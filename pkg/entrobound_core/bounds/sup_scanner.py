# entrobound_core/bounds/sup_scanner.py
"""Truncated evaluation of sup_{k>=1} of a log-domain term sequence."""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

logger = logging.getLogger("entrobound.bounds.scan")

# log term values for k in [start, stop)
TermBlock = Callable[[int, int], np.ndarray]
# upper bound (log) on every term with k >= k0
Envelope = Callable[[int], float]


@dataclass(frozen=True)
class ScanOutcome:
    log_value: float
    argmax_k: int
    k_max: int
    certified: bool


def initial_scan_length(n: int, min_k: int, log_factor: int) -> int:
    """max(min_k, ceil(log_factor * log2 n))."""
    return max(min_k, int(math.ceil(log_factor * math.log2(n))) if n > 1 else 1)


def scan_supremum(
    terms: TermBlock,
    initial_k: int,
    max_k: int,
    envelope: Optional[Envelope] = None,
    support: Optional[int] = None,
) -> ScanOutcome:
    """Scan k = 1..K, doubling K until the envelope closes or a limit is hit.

    With an envelope the stop is certified. Without one the range is extended
    while the maximum sits in (or the values still rise through) the last
    quarter, and the result is heuristic. Ties go to the smallest k.
    """
    limit = max_k if support is None else min(max_k, support)
    limit = max(1, limit)
    k_hi = max(1, min(initial_k, limit))
    values = _clean(terms(1, k_hi + 1))

    while True:
        best_index = int(np.argmax(values))
        best = float(values[best_index])

        if support is not None and k_hi >= support:
            return ScanOutcome(best, best_index + 1, k_hi, True)
        if envelope is not None:
            bound = envelope(k_hi + 1)
            if bound <= best:
                return ScanOutcome(best, best_index + 1, k_hi, True)
        else:
            quarter = k_hi - k_hi // 4
            still_rising = k_hi >= 4 and values[-1] > values[quarter - 1]
            if best_index + 1 <= quarter and not still_rising:
                return ScanOutcome(best, best_index + 1, k_hi, False)

        if k_hi >= limit:
            logger.debug(f"sup scan reached its cap k={k_hi} without closing")
            return ScanOutcome(best, best_index + 1, k_hi, False)

        new_hi = min(2 * k_hi, limit)
        values = np.concatenate((values, _clean(terms(k_hi + 1, new_hi + 1))))
        k_hi = new_hi


def _clean(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block, dtype=float)
    return np.where(np.isnan(block), -math.inf, block)
