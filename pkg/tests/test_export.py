#
# tests/test_export.py
#
"""
Tests for CSV and JSON result export.
"""
import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

from pyvider.complementarity.errors import ContractViolationError, ExportError
from pyvider.complementarity.experiments.export import (
    OPTIMIZATION_COLUMNS,
    TALLY_COLUMNS,
    export_results,
    format_cell,
    json_ready,
    render_json,
    render_results,
)
from pyvider.complementarity.experiments.optimization import OptimizationSpec, run_basis_optimization
from pyvider.complementarity.experiments.sweep import SWEEP_COLUMNS, SweepSpec, run_sweep
from pyvider.complementarity.experiments.tally import TallyMatrix
from pyvider.complementarity.rng import RngStream


@pytest.fixture
def sweep_rows() -> list:
    return run_sweep(SweepSpec("psi_epsilon", (0.0, 0.5, 1.0), mub_count=2))


@pytest.fixture
def tally() -> TallyMatrix:
    return TallyMatrix.from_masks(
        ("witness", "pearson3"),
        np.array([True, True, False, True]),
        np.array([[1, 1], [0, 1], [0, 0], [1, 0]], dtype=bool),
    )


class TestCells:
    @pytest.mark.parametrize(("value", "expected"), [
        (None, ""),
        (True, "true"),
        (False, "false"),
        (3, "3"),
        (0.1 + 0.2, "0.3"),
        (float("nan"), ""),
        (1 / 3, "0.333333333333"),
        ("W1", "W1"),
    ])
    def test_format_cell(self, value: object, expected: str) -> None:
        assert format_cell(value) == expected

    def test_json_ready(self) -> None:
        data = {"a": np.float64(1 / 3), "b": np.int64(7), "c": [np.bool_(True), float("nan")], 4: (1, None)}
        assert json_ready(data) == {"a": 0.333333333333, "b": 7, "c": [True, None], "4": [1, None]}


class TestCsv:
    def test_sweep_rows(self, sweep_rows: list) -> None:
        text = render_results(sweep_rows, "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert tuple(rows[0]) == SWEEP_COLUMNS
        assert len(rows) == 4
        first = dict(zip(SWEEP_COLUMNS, rows[1], strict=True))
        assert first["p"] == "0"
        assert first["C_sum"] == ""
        assert first["ppt_entangled"] == "false"
        middle = dict(zip(SWEEP_COLUMNS, rows[2], strict=True))
        assert middle["ppt_entangled"] == "true"
        assert "\r" not in text

    def test_tally(self, tally: TallyMatrix) -> None:
        rows = list(csv.DictReader(io.StringIO(render_results(tally))))
        assert tuple(rows[0]) == TALLY_COLUMNS
        by_key = {(r["kind"], r["name"]): r for r in rows}
        assert by_key[("summary", "n_samples")]["count"] == "4"
        assert by_key[("summary", "n_entangled")]["fraction"] == "0.75"
        assert by_key[("detector", "pearson3")]["count"] == "2"
        assert by_key[("venn", "witness+pearson3")]["count"] == "1"
        assert by_key[("venn", "pearson3")]["fraction"] == "0.333333333333"
        assert by_key[("false_positive", "witness")]["count"] == "0"

    def test_optimization_long_format(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(40, 2, "fixed", RngStream(1), n_bins=4))
        rows = list(csv.DictReader(io.StringIO(render_results([summary]))))
        assert tuple(rows[0]) == OPTIMIZATION_COLUMNS
        assert len(rows) == 4
        assert [r["bin_lo"] for r in rows] == ["0", "0.5", "1", "1.5"]
        assert sum(int(r["entangled"]) + int(r["separable"]) for r in rows) == 40


class TestJson:
    def test_document_shape(self, tally: TallyMatrix) -> None:
        doc = json.loads(render_results(tally, "json", meta={"seed": 42}))
        assert doc["meta"]["seed"] == 42
        assert "version" in doc["meta"]
        assert doc["results"]["venn"]["3"]["detectors"] == ["witness", "pearson3"]

    def test_undefined_becomes_null(self, sweep_rows: list) -> None:
        doc = json.loads(render_results(sweep_rows, "json"))
        assert doc["results"][0]["C_sum"] is None
        assert doc["results"][1]["p"] == 0.5

    def test_output_is_deterministic(self, sweep_rows: list) -> None:
        again = run_sweep(SweepSpec("psi_epsilon", (0.0, 0.5, 1.0), mub_count=2))
        assert render_results(sweep_rows, "json") == render_results(again, "json")
        assert render_json([1.0]).endswith("\n")


class TestExportResults:
    def test_writes_file(self, tmp_path: Path, tally: TallyMatrix) -> None:
        target = export_results(tally, tmp_path / "tally.json", "json", meta={"command": "montecarlo"})
        raw = target.read_bytes()
        assert b"\r\n" not in raw
        assert json.loads(raw)["meta"]["command"] == "montecarlo"

    def test_same_input_same_bytes(self, tmp_path: Path, sweep_rows: list) -> None:
        a = export_results(sweep_rows, tmp_path / "a.csv")
        b = export_results(sweep_rows, tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path(self, tmp_path: Path, tally: TallyMatrix) -> None:
        with pytest.raises(ExportError, match="cannot write"):
            export_results(tally, tmp_path)

    def test_nothing_to_export(self) -> None:
        with pytest.raises(ContractViolationError):
            render_results([])

    def test_unknown_format(self, tally: TallyMatrix) -> None:
        with pytest.raises(ContractViolationError):
            render_results(tally, "xml")  # type: ignore[arg-type]

# 🧪💾
