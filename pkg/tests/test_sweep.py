#
# tests/test_sweep.py
#
"""
Tests for family sweeps and their grid and measure parsing.
"""
import numpy as np
import pytest

from pyvider.complementarity.errors import ConfigError, ParameterRangeError, UnknownNameError
from pyvider.complementarity.experiments.sweep import (
    SWEEP_COLUMNS,
    SweepSpec,
    parse_grid,
    parse_measure,
    run_sweep,
)


class TestParsing:
    def test_range_grid_is_inclusive(self) -> None:
        assert parse_grid("0:1:0.25") == (0.0, 0.25, 0.5, 0.75, 1.0)
        grid = parse_grid("0:1:0.01")
        assert len(grid) == 101
        assert grid[-1] == 1.0
        assert grid[33] == 0.33

    def test_list_grid(self) -> None:
        assert parse_grid("0.1, 0.5,0.9") == (0.1, 0.5, 0.9)

    @pytest.mark.parametrize("text", ["a:b:c", "0:1:0", "1:0:0.1", "0:1", "x,y"])
    def test_bad_grids(self, text: str) -> None:
        with pytest.raises(ConfigError):
            parse_grid(text)

    @pytest.mark.parametrize(("name", "expected"), [("I", "I"), ("mi", "I"), ("Pearson", "C"), ("condprob", "S"), ("s", "S")])
    def test_measures(self, name: str, expected: str) -> None:
        assert parse_measure(name) == expected

    def test_unknown_measure(self) -> None:
        with pytest.raises(ConfigError, match="unknown measure"):
            parse_measure("discord")


class TestSweepSpec:
    def test_out_of_range_grid(self) -> None:
        with pytest.raises(ParameterRangeError):
            SweepSpec("werner", (0.5, 1.2))

    def test_empty_grid(self) -> None:
        with pytest.raises(ParameterRangeError):
            SweepSpec("werner", ())

    def test_unknown_family(self) -> None:
        with pytest.raises(UnknownNameError):
            SweepSpec("sparkly", (0.5,))

    def test_mub_count(self) -> None:
        with pytest.raises(ValueError):
            SweepSpec("werner", (0.5,), mub_count=4)


class TestRunSweep:
    def test_werner_pearson_crosses_at_one_third(self) -> None:
        rows = run_sweep(SweepSpec("werner", parse_grid("0:1:0.01"), ("C",), 3))
        for row in rows:
            assert row.C_sum == pytest.approx(3 * row.p, abs=1e-9)
            assert row.pearson_detected == (row.p > 1 / 3)
            assert row.ppt_entangled == (row.p > 1 / 3)
            assert row.I_sum is None
            assert row.mi_detected is None

    @pytest.mark.parametrize("eps", [0.2, 0.5, 0.7])
    def test_psi_epsilon_pearson(self, eps: float) -> None:
        (row,) = run_sweep(SweepSpec("psi_epsilon", (eps,), ("C",), 2))
        assert row.C_sum == pytest.approx(1 + 2 * eps * np.sqrt(1 - eps * eps), abs=1e-9)
        assert row.pearson_detected

    def test_undefined_values_stay_empty(self) -> None:
        (row,) = run_sweep(SweepSpec("psi_epsilon", (0.0,), mub_count=2))
        assert row.C_sum is None
        assert row.pearson_detected is None
        assert row.S_sum is None
        assert row.condprob_detected is None
        assert row.I_sum == pytest.approx(0.0)

    def test_thresholds_and_record(self) -> None:
        (row,) = run_sweep(SweepSpec("werner", (0.9,), mub_count=2))
        assert (row.mi_threshold, row.pearson_threshold, row.s_lower, row.s_upper) == (1.0, 1.0, 1.0, 3.0)
        assert row.mi_detected
        assert row.condprob_detected
        assert tuple(row.as_record()) == SWEEP_COLUMNS

    def test_dotted_family_stays_on_the_boundaries(self) -> None:
        for row in run_sweep(SweepSpec("dotted", parse_grid("0:1:0.1"), mub_count=2)):
            assert row.C_sum == pytest.approx(1.0)
            assert row.S_sum == pytest.approx(3.0)
            assert not (row.pearson_detected or row.condprob_detected or row.mi_detected)

# 🧪📈
