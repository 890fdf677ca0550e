from entrobound_core.conditions.classifier import classify
from entrobound_core.conditions.condition_checks import (
    check_alm_incr,
    check_alp,
    check_amp,
    check_doubling,
    check_exp,
    check_exp_partial_sum,
    check_exp_shifted,
    check_exp_tail,
    check_geo_mean,
    check_tail_doubling,
    plateau_verdict,
    search_alm_incr_exponent,
    search_exp_base,
)
from entrobound_core.conditions.condition_report import ConditionReport, Verdict, Witness
