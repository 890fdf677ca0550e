from entrobound_core.sequences.exponent_pair import ExponentPair, quasi_norm_constant
from entrobound_core.sequences.log_real import LogReal
from entrobound_core.sequences.sequence_ops import (
    TailEstimate,
    first_entropy_bracket,
    geometric_mean,
    log_geometric_means,
    log_partial_sums_inv,
    log_prefix_sums,
    operator_norm,
    partial_sum_inv,
    tail,
    tail_bracket,
    tail_sequence,
)
from entrobound_core.sequences.sequence_spec import (
    Explicit,
    ExpExp,
    ExpLog,
    ExpPoly,
    Geometric,
    PolyLog,
    Polynomial,
    SequenceSpec,
    TailKind,
    TailModel,
)
from entrobound_core.sequences.spec_parser import parse_exponent, parse_sequence_spec


def eval_sigma(spec: SequenceSpec, n: int) -> LogReal:
    """sigma_n in log-domain."""
    return spec.eval(n)
