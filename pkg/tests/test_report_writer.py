import io
import json
import math

import numpy as np
import pytest

from entrobound_core.output.report_writer import ReportWriter, format_float


def test_format_float():
    assert format_float(0.5) == "0.5"
    assert format_float(1.0 / 3.0, 6) == "0.333333"
    for value in (math.nan, math.inf, -math.inf):
        assert format_float(value) is None


class TestJson:
    def test_document_layout(self):
        text = ReportWriter("json", 6).render_json("bound", {"p": "1.0"}, [{"n": 4, "value": 0.25}])
        assert text.endswith("\n")
        assert text.startswith('{\n  "schema_version": 1,')
        document = json.loads(text)
        assert document == {"schema_version": 1, "command": "bound", "config": {"p": "1.0"}, "rows": [{"n": 4, "value": 0.25}]}

    def test_floats_are_unquoted_and_rounded(self):
        text = ReportWriter("json", 4).render_json("tail", {}, [{"value": 2.0 / 3.0}])
        assert '"value": 0.6667' in text

    def test_non_finite_values_become_null(self):
        rows = [{"value": math.inf, "log10_value": -math.inf, "margin": math.nan}]
        document = json.loads(ReportWriter().render_json("verify", {}, rows))
        assert document["rows"][0] == {"value": None, "log10_value": None, "margin": None}

    def test_nested_and_numpy_values(self):
        rows = [{"witness": {"ratio": np.float64(0.25), "n": 8}, "flags": [True, None], "k": np.int64(3)}]
        document = json.loads(ReportWriter().render_json("classify", {}, rows))
        assert document["rows"][0] == {"witness": {"ratio": 0.25, "n": 8}, "flags": [True, None], "k": 3.0}

    def test_identical_inputs_give_identical_bytes(self):
        writer = ReportWriter()
        rows = [{"n": n, "value": 1.0 / n} for n in range(1, 20)]
        assert writer.render_json("bound", {"n": list(range(1, 20))}, rows) == writer.render_json(
            "bound", {"n": list(range(1, 20))}, rows
        )


class TestCsv:
    def test_cells(self):
        stream = io.StringIO()
        rows = [
            {"check": "scaling", "passed": True, "margin": 0.5, "cases": 3, "counterexample": None},
            {"check": "sandwich", "passed": False, "margin": -math.inf, "cases": 1, "counterexample": {"n": 16}},
        ]
        ReportWriter("csv").write("verify", {}, rows, stream, ("check", "passed", "margin", "cases", "counterexample"))
        lines = stream.getvalue().splitlines()
        assert lines[0] == "check,passed,margin,cases,counterexample"
        assert lines[1] == "scaling,true,0.5,3,"
        assert lines[2] == 'sandwich,false,,1,"{""n"":16}"'

    def test_missing_columns_are_empty(self):
        stream = io.StringIO()
        ReportWriter("csv").write_csv(("k", "value"), [{"k": 1}], stream)
        assert stream.getvalue() == "k,value\n1,\n"

    def test_command_without_layout(self):
        with pytest.raises(ValueError):
            ReportWriter("csv").write("help", {}, [], io.StringIO())


class TestWriterSettings:
    def test_format_is_normalized(self):
        assert ReportWriter(" CSV ").output_format == "csv"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            ReportWriter("xml")

    @pytest.mark.parametrize("digits", [0, 18])
    def test_digits_range(self, digits):
        with pytest.raises(ValueError):
            ReportWriter("json", digits)

    def test_json_write_flushes_to_stream(self):
        stream = io.StringIO()
        ReportWriter().write("table1", {}, [], stream)
        assert json.loads(stream.getvalue())["rows"] == []
