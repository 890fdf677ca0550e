# entrobound_core/bounds/bound_curve.py
import concurrent.futures
import logging
from typing import Callable, Dict, List, Sequence, Tuple

from entrobound_core.bounds.bound_forms import (
    amp_envelope,
    lower_bound,
    optimal_form_alp,
    optimal_form_amp,
    optimal_form_exp,
    upper_bound_p_gt_q,
    upper_bound_p_lt_q,
    upper_bound_with_constants,
)
from entrobound_core.bounds.bound_result import BoundResult, FormRequest
from entrobound_core.config_defs import DEFAULT_RTOL, DEFAULT_THREADS, ScanConfig
from entrobound_core.sequences.exponent_pair import ExponentPair
from entrobound_core.sequences.sequence_spec import SequenceSpec

logger = logging.getLogger("entrobound.bounds.curve")


def _upper_bound(spec, pair, n, rtol, scan) -> BoundResult:
    pair.require_distinct()
    if pair.p_less_than_q:
        return upper_bound_p_lt_q(spec, pair, n, scan)
    return upper_bound_p_gt_q(spec, pair, n, rtol, scan)


_EVALUATORS: Dict[FormRequest, Callable[..., BoundResult]] = {
    FormRequest.UB: _upper_bound,
    FormRequest.LB: lambda spec, pair, n, rtol, scan: lower_bound(spec, pair, n, scan),
    FormRequest.UB_CONST: upper_bound_with_constants,
    FormRequest.OPT_EXP: lambda spec, pair, n, rtol, scan: optimal_form_exp(spec, pair, n, scan),
    FormRequest.OPT_ALP: optimal_form_alp,
    FormRequest.OPT_AMP: lambda spec, pair, n, rtol, scan: optimal_form_amp(spec, pair, n, rtol),
    FormRequest.AMP_ENVELOPE: amp_envelope,
}


def evaluate_form(
    request: FormRequest,
    spec: SequenceSpec,
    pair: ExponentPair,
    n: int,
    rtol: float = DEFAULT_RTOL,
    scan: ScanConfig = ScanConfig(),
) -> BoundResult:
    """Dispatches a requested form; 'ub' and 'ub-const' pick the p<q or p>q variant."""
    return _EVALUATORS[request](spec, pair, n, rtol, scan)


def bound_curve(
    spec: SequenceSpec,
    pair: ExponentPair,
    n_list: Sequence[int],
    forms: Sequence[FormRequest],
    rtol: float = DEFAULT_RTOL,
    scan: ScanConfig = ScanConfig(),
    threads: int = DEFAULT_THREADS,
) -> List[BoundResult]:
    """Every requested form at every n, ordered by n and then by the order of forms."""
    tasks: List[Tuple[int, FormRequest]] = [(n, form) for n in n_list for form in forms]
    if not tasks:
        return []
    logger.debug(f"bound_curve: {len(tasks)} evaluations for {spec.describe()} on {threads} thread(s)")
    if threads <= 1 or len(tasks) == 1:
        return [evaluate_form(form, spec, pair, n, rtol, scan) for n, form in tasks]

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(evaluate_form, form, spec, pair, n, rtol, scan) for n, form in tasks]
        return [future.result() for future in futures]
