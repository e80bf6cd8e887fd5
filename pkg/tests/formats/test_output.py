"""
Tests for tropnev.formats.output module.
"""

import io
import json

import numpy as np
import pytest

from tropnev.core.exceptions import ValidationError
from tropnev.formats.output import format_cell, read_csv_table, render, to_jsonable, write_output


class TestFormatCell:
    """CSV cell text."""

    @pytest.mark.parametrize(
        "value, text",
        [
            (True, "true"),
            (np.bool_(False), "false"),
            (3, "3"),
            (np.int64(4), "4"),
            (2.0, "2"),
            (0.25, "0.25"),
            (float("-inf"), "-inf"),
            (None, ""),
            ("pass", "pass"),
        ],
    )
    def test_values(self, value, text):
        assert format_cell(value) == text

    def test_to_jsonable(self):
        data = to_jsonable({"a": np.array([1.0, -np.inf]), "b": (np.int64(2), True)})
        assert data == {"a": [1.0, "-inf"], "b": [2, True]}


class TestRender:
    """CSV and JSON tables."""

    def test_csv_layout(self):
        text = render(["r", "T"], [[1.0, 0.0], [2.0, 0.5]], metadata={"seed": 0, "K": 2})
        assert text.splitlines() == ["# K=2", "# seed=0", "r,T", "1,0", "2,0.5"]

    def test_csv_summary_scalars_become_metadata(self):
        text = render(["x"], [[1]], summary={"status": "pass", "growth": {"rho": 1.0}})
        assert "# status=pass" in text
        assert "growth" not in text

    def test_json_payload(self):
        text = render(
            ["r", "T"],
            [[1.0, float("-inf")]],
            fmt="json",
            metadata={"K": 2},
            summary={"status": "fail"},
        )
        data = json.loads(text)
        assert data["header"] == ["r", "T"]
        assert data["rows"] == [[1.0, "-inf"]]
        assert data["summary"] == {"status": "fail"}
        assert data["metadata"] == {"K": 2}

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            render(["x"], [], fmt="xml")

    def test_read_back(self):
        text = render(["r", "T"], [[1.0, 0.0], [2.0, 0.5]], metadata={"check": "charfun"})
        rows = read_csv_table(text)
        assert rows == [{"r": "1", "T": "0"}, {"r": "2", "T": "0.5"}]


class TestWriteOutput:
    """Files and streams."""

    def test_file(self, tmp_path):
        target = tmp_path / "nested" / "out.csv"
        write_output("a,b\n", target)
        assert target.read_text(encoding="utf-8") == "a,b\n"

    def test_stream(self):
        stream = io.StringIO()
        write_output("hello\n", stream=stream)
        assert stream.getvalue() == "hello\n"
