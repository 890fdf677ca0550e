from entrobound_core.verification.invariant_suite import (
    MATRIX_PAIRS,
    MATRIX_SPECS,
    CheckResult,
    InvariantSuite,
    require_all_passed,
)
from entrobound_core.verification.table1 import EXPECTED_ENTRIES, Table1Row, table1_matrix
