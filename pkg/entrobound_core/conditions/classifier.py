# entrobound_core/conditions/classifier.py
import concurrent.futures
import functools
import logging
from typing import Callable, List

from entrobound_core.conditions.condition_checks import (
    check_alp,
    check_amp,
    check_doubling,
    search_exp_base,
)
from entrobound_core.conditions.condition_report import ConditionReport
from entrobound_core.config_defs import DEFAULT_PLATEAU_RTOL, DEFAULT_RTOL, DEFAULT_THREADS, DEFAULT_WINDOW
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.sequence_spec import SequenceSpec

logger = logging.getLogger("entrobound.conditions.classify")


def classify(
    spec: SequenceSpec,
    p: float,
    q: float,
    window: int = DEFAULT_WINDOW,
    rtol: float = DEFAULT_RTOL,
    plateau_rtol: float = DEFAULT_PLATEAU_RTOL,
    threads: int = DEFAULT_THREADS,
) -> List[ConditionReport]:
    """The branch battery: EXP (grid base search) and doubling for p < q; ALP, AMP, EXP and doubling for p > q."""
    pair = ExponentPair(p, q).require_distinct()
    battery: List[Callable[[], ConditionReport]] = []
    if pair.p_greater_than_q:
        r = pair.r
        battery.append(functools.partial(check_alp, spec, r, rtol, window, plateau_rtol))
        battery.append(functools.partial(check_amp, spec, r, rtol, window, plateau_rtol))
    battery.append(functools.partial(search_exp_base, spec, window, plateau_rtol))
    battery.append(functools.partial(check_doubling, spec, window, plateau_rtol))

    logger.debug(f"classify {spec.describe()} p={pair.p} q={pair.q}: {len(battery)} checks")
    if threads <= 1:
        return [check() for check in battery]
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(threads, len(battery))) as executor:
        futures = [executor.submit(check) for check in battery]
        return [future.result() for future in futures]
