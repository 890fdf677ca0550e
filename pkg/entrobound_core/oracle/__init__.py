from entrobound_core.oracle.covering import (
    covering_bound_rhs,
    covering_estimate,
    covering_upper,
    packing_covering_lower,
    packing_lower,
    volume_lower_nd,
)
from entrobound_core.oracle.entropy_bracket import EntropyBracket, entropy_bracket, finite_upper_bound
from entrobound_core.oracle.finite_diag import CoveringEstimate, FiniteDiag
from entrobound_core.oracle.mc_volume import mc_volume
