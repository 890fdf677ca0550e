import json

import pytest

from conftest import CSV_TEST_CONFIG
from entrobound_core.verification.invariant_suite import CheckResult, InvariantSuite

HALVING = "geom:c=1,b=2"
BASEL = "poly:a=1,alpha=2"


class TestBound:
    def test_lower_bound_below_upper_bound(self, run_cli):
        result = run_cli("bound", "--sigma", HALVING, "--p", "1", "--q", "2", "--n", "1,4,16")
        assert result.exit_code == 0
        report = result.report
        assert report["schema_version"] == 1
        assert report["command"] == "bound"
        assert report["config"]["sigma"] == "geom:c=1.0,b=2.0"
        assert report["config"]["n"] == [1, 4, 16]
        assert report["config"]["rtol"] == pytest.approx(1e-9)

        by_n = {}
        for row in result.rows:
            by_n.setdefault(row["n"], {})[row["form"]] = row["log10_value"]
        assert sorted(by_n) == [1, 4, 16]
        for values in by_n.values():
            upper, lower = values.values()
            assert lower <= upper

    def test_amp_staircase(self, run_cli):
        result = run_cli("bound", "--sigma", BASEL, "--p", "inf", "--q", "1", "--n", "8", "--forms", "opt-amp")
        assert result.exit_code == 0
        [row] = result.rows
        assert row["argmax_k"] == 4
        assert row["value"] == pytest.approx(0.283823, abs=1e-6)

    def test_slow_explog_has_no_optimal_form(self, run_cli):
        args = ("bound", "--sigma", "explog:a=1,lambda=0.5", "--p", "1", "--q", "2", "--n", "4")
        result = run_cli(*args, "--forms", "ub,opt-exp")
        assert result.exit_code == 0
        assert [row["form"] for row in result.rows] == ["UB-p<q"]
        assert run_cli(*args, "--forms", "opt-exp").exit_code == 2

    def test_equal_exponents_exit_code(self, run_cli):
        result = run_cli("bound", "--sigma", HALVING, "--p", "2", "--q", "2", "--n", "4")
        assert result.exit_code == 4
        assert result.out == ""
        assert "p != q" in result.err

    @pytest.mark.parametrize(
        "args",
        [
            ("--sigma", "cauchy:x=1", "--p", "1", "--q", "2", "--n", "4"),
            ("--sigma", HALVING, "--p", "0", "--q", "2", "--n", "4"),
            ("--sigma", HALVING, "--p", "1", "--q", "2", "--n", "4,2"),
            ("--sigma", HALVING, "--p", "1", "--q", "2", "--n", "4", "--forms", "best"),
        ],
    )
    def test_bad_input_exit_code(self, run_cli, args):
        result = run_cli("bound", *args)
        assert result.exit_code == 2
        assert result.out == ""
        assert result.err.startswith("entrobound bound:")

    def test_unbounded_operator_exit_code(self, run_cli):
        result = run_cli("bound", "--sigma", "poly:a=1,alpha=0.5", "--p", "2", "--q", "1", "--n", "4")
        assert result.exit_code == 3

    def test_repeated_runs_are_byte_identical(self, run_cli):
        args = ("bound", "--sigma", BASEL, "--p", "2", "--q", "1", "--n", "2^0..2^6", "--forms", "ub,opt-alp,lb")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.exit_code == second.exit_code == 0
        assert first.out == second.out

    def test_csv_output(self, run_cli):
        result = run_cli("bound", "--sigma", HALVING, "--p", "1", "--q", "2", "--n", "1,2", config=CSV_TEST_CONFIG)
        assert result.exit_code == 0
        lines = result.out.splitlines()
        assert lines[0] == "n,form,log10_value,value,argmax_k,k_min,k_max,certificate"
        assert len(lines) == 5

    def test_output_flag_overrides_config(self, run_cli):
        result = run_cli("bound", "--output", "json", "--sigma", HALVING, "--p", "1", "--q", "2", "--n", "1",
                         config=CSV_TEST_CONFIG)
        assert result.report["command"] == "bound"


class TestClassifyAndTail:
    def test_double_exponential(self, run_cli):
        result = run_cli("classify", "--sigma", "expexp:a=1,lambda=1", "--p", "1", "--q", "2")
        assert result.exit_code == 0
        exp, doubling = result.rows
        assert exp["condition"].startswith("EXP")
        assert exp["verdict"] == "holds"
        assert doubling["condition"] == "DOUBLING"
        assert result.report["config"]["window"] == 256

    def test_explog_tail_conditions(self, run_cli):
        result = run_cli("classify", "--sigma", "explog:a=1,lambda=2", "--p", "2", "--q", "1")
        assert result.exit_code == 0
        verdicts = [row["verdict"] for row in result.rows]
        assert verdicts == ["holds", "fails", "fails", "fails"]

    def test_classify_equal_exponents(self, run_cli):
        assert run_cli("classify", "--sigma", BASEL, "--p", "1", "--q", "1").exit_code == 4

    def test_geometric_tail(self, run_cli):
        result = run_cli("tail", "--sigma", HALVING, "--r", "1", "--k", "1,2")
        assert result.exit_code == 0
        first, second = result.rows
        assert (first["k"], second["k"]) == (1, 2)
        assert first["value"] == pytest.approx(1.0)
        assert second["value"] == pytest.approx(0.5)
        assert first["log10_lower"] <= first["log10_value"] <= first["log10_upper"]

    def test_tail_radius_from_exponents(self, run_cli):
        result = run_cli("tail", "--sigma", BASEL, "--p", "inf", "--q", "1", "--k", "1")
        assert result.exit_code == 0
        [row] = result.rows
        assert row["r"] == 1.0

    def test_tail_needs_a_radius(self, run_cli):
        assert run_cli("tail", "--sigma", BASEL).exit_code == 2


class TestOracle:
    def test_segment_bracket_and_cover(self, run_cli, unit_weight_file):
        result = run_cli(
            "oracle", "--sigma", f"file:{unit_weight_file}", "--p", "inf", "--q", "inf", "--k", "1",
            "--n", "2", "--eps", "0.5",
        )
        assert result.exit_code == 0
        bracket, cover = result.rows
        assert bracket["kind"] == "bracket"
        assert bracket["lo"] <= 0.5 <= bracket["hi"]
        assert cover["kind"] == "covering"
        assert cover["n_lower"] <= cover["n_upper"] == 2
        assert cover["seed"] == 7
        assert result.report["config"]["seed"] == 7

    def test_seed_flag(self, run_cli, unit_weight_file):
        result = run_cli(
            "oracle", "--sigma", f"file:{unit_weight_file}", "--p", "inf", "--q", "inf", "--k", "1",
            "--eps", "0.5", "--seed", "11",
        )
        assert result.rows[0]["seed"] == 11

    def test_dimension_cap(self, run_cli):
        result = run_cli("oracle", "--sigma", HALVING, "--p", "1", "--q", "2", "--k", "4", "--eps", "0.5")
        assert result.exit_code == 2

    def test_needs_a_grid(self, run_cli):
        assert run_cli("oracle", "--sigma", HALVING, "--p", "1", "--q", "2", "--k", "2").exit_code == 2


class TestValidationCommands:
    def test_single_check(self, run_cli):
        result = run_cli("verify", "--quick", "--check", "volume-ratio-slope")
        assert result.exit_code == 0
        [row] = result.rows
        assert row["check"] == "volume-ratio-slope"
        assert row["passed"] is True
        assert result.report["config"]["checks"] == ["volume-ratio-slope"]

    def test_alias(self, run_cli):
        assert run_cli("check", "--quick", "--check", "volume-ratio-slope").exit_code == 0

    def test_unknown_check(self, run_cli):
        result = run_cli("verify", "--quick", "--check", "no-such-check")
        assert result.exit_code == 2
        assert "no-such-check" in result.err

    def test_failing_check_prints_its_counterexample(self, run_cli, monkeypatch):
        def failing(self):
            return CheckResult("volume-ratio-slope", False, -0.5, 1, {"k": 3})

        monkeypatch.setattr(InvariantSuite, "check_volume_slope", failing)
        result = run_cli("verify", "--quick", "--check", "volume-ratio-slope")
        assert result.exit_code == 5
        assert result.rows[0]["passed"] is False
        counterexample = json.loads(result.err.strip().splitlines()[-1])
        assert counterexample == {"check": "volume-ratio-slope", "k": 3}

    def test_table1(self, run_cli):
        result = run_cli("table1")
        assert result.exit_code == 0
        assert len(result.rows) == 9
        assert all(row["match"] for row in result.rows)


class TestHelpAndUsage:
    def test_general_help(self, run_cli):
        result = run_cli("help")
        assert result.exit_code == 0
        assert "Analysis:" in result.out
        assert "Validation:" in result.out
        assert "bound" in result.out

    def test_command_help(self, run_cli):
        result = run_cli("help", "verify")
        assert result.exit_code == 0
        assert result.out.startswith("Usage: entrobound verify")
        assert "Aliases: check" in result.out
        assert "Category: Validation" in result.out

    def test_category_help(self, run_cli):
        result = run_cli("help", "validation")
        assert result.exit_code == 0
        assert "table1" in result.out

    def test_unknown_topic(self, run_cli):
        assert run_cli("help", "plot").exit_code == 2

    @pytest.mark.parametrize(
        "args",
        [
            (),
            ("plot",),
            ("bound", "--sigma", HALVING),
            ("bound", "--sigma", HALVING, "--p", "1", "--q", "2", "--n", "4", "--output", "xml"),
        ],
    )
    def test_usage_errors_exit_two(self, run_cli, args):
        assert run_cli(*args).exit_code == 2
