import pytest

from entrobound_core.errors import InvariantViolationError, SpecParseError
from entrobound_core.verification import (
    EXPECTED_ENTRIES,
    CheckResult,
    InvariantSuite,
    require_all_passed,
    table1_matrix,
)


@pytest.fixture(scope="module")
def table1_rows():
    return table1_matrix(window=256, threads=1)


class TestTable1:
    def test_every_entry_matches(self, table1_rows):
        assert len(table1_rows) == 9
        mismatches = [row.to_dict() for row in table1_rows if not row.matches]
        assert mismatches == []

    def test_row_order(self, table1_rows):
        assert [(row.family, row.lam) for row in table1_rows] == list(EXPECTED_ENTRIES)

    def test_boundary_rows_carry_notes(self, table1_rows):
        by_key = {(row.family, row.lam): row for row in table1_rows}
        assert by_key[("explog", 1.0)].note == "reduces to polynomial decay"
        assert by_key[("explog", 0.5)].entries == ("no", "unbounded", "unbounded")
        assert by_key[("expexp", 2.0)].entries == ("yes", "yes", "no")

    def test_serialized_row(self, table1_rows):
        data = table1_rows[0].to_dict()
        assert set(data) == {
            "family",
            "lambda",
            "spec",
            "exp",
            "alp",
            "amp",
            "expected_exp",
            "expected_alp",
            "expected_amp",
            "match",
            "note",
        }
        assert data["match"] is True

    def test_threads_give_the_same_rows(self, table1_rows):
        assert table1_matrix(window=256, threads=4) == table1_rows


class TestInvariantSuite:
    @pytest.mark.parametrize(
        "name",
        ["volume-ratio-slope", "tail-recurrence", "doubling-equivalences", "condition-implications", "table1-matrix"],
    )
    def test_quick_check_passes(self, name):
        [result] = InvariantSuite(quick=True, window=256, threads=1).run(only=[name])
        assert result.name == name
        assert result.passed, result.counterexample
        assert result.cases > 0

    def test_monte_carlo_volume_accepts_the_exact_cube(self):
        # the cube estimate is exact with zero standard error, while the gamma-function volume is off by an ulp
        [result] = InvariantSuite(quick=True).run(only=["volume-monte-carlo"])
        assert result.passed, result.counterexample
        assert result.cases == 6

    def test_finite_brackets_enclose_the_bound_formulas(self):
        [result] = InvariantSuite(quick=True, threads=1).run(only=["finite-brackets"])
        assert result.passed, result.counterexample

    def test_scaling_covers_every_matrix_family(self):
        suite = InvariantSuite(quick=True, threads=1)
        [result] = suite.run(only=["scaling"])
        assert result.passed, result.counterexample
        grid = suite.n_grid[:: max(1, len(suite.n_grid) // 4)]
        expected = sum(len(grid) * len(suite._forms_for(pair)) for _, pair in suite._matrix_cases())
        assert result.cases == expected

    def test_unknown_check_is_rejected(self):
        with pytest.raises(SpecParseError):
            InvariantSuite(quick=True).run(only=["sandwich", "no-such-check"])

    def test_check_names_are_unique(self):
        names = [name for name, _ in InvariantSuite(quick=True).checks()]
        assert len(names) == len(set(names)) == 14

    @pytest.mark.slow
    def test_full_quick_run(self):
        results = InvariantSuite(quick=True, threads=2).run()
        failed = [result.to_dict() for result in results if not result.passed]
        assert failed == []
        require_all_passed(results)


class TestRequireAllPassed:
    def test_passes_silently(self):
        require_all_passed([CheckResult("scaling", True, 0.5, 3)])

    def test_first_failure_is_raised_with_its_counterexample(self):
        results = [
            CheckResult("scaling", True, 0.5, 3),
            CheckResult("sandwich", False, -0.1, 4, {"spec": "geom:c=1.0,b=2.0", "n": 16}),
            CheckResult("amp-staircase", False, -1.0, 1, {"spec": "poly:a=1.0,alpha=2.0"}),
        ]
        with pytest.raises(InvariantViolationError) as excinfo:
            require_all_passed(results)
        assert excinfo.value.exit_code == 5
        assert excinfo.value.counterexample == {"check": "sandwich", "spec": "geom:c=1.0,b=2.0", "n": 16}
