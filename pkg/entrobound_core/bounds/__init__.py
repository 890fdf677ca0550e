from entrobound_core.bounds.bound_curve import bound_curve, evaluate_form
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
from entrobound_core.bounds.bound_result import BoundForm, BoundResult, Certificate, FormRequest
from entrobound_core.bounds.volume import VolumeRatio, volume_ratio, volume_unit_ball
