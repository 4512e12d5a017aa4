#
# tests/test_optimization.py
#
"""
Tests for the Pearson basis-optimisation experiments.
"""
from types import SimpleNamespace

import numpy as np
import pytest

from pyvider.complementarity.bases import qubit_rotation
from pyvider.complementarity.experiments.kernels import BlochData
from pyvider.complementarity.experiments.montecarlo import run_montecarlo
from pyvider.complementarity.experiments.optimization import (
    OptimizationSpec,
    _statistic,
    bloch_rotation,
    compare_modes,
    equatorial_directions,
    hemisphere_frames,
    random_frames,
    run_basis_optimization,
)
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import random_density_matrices

N_STATES = 400


class TestCandidateGeometry:
    def test_bloch_rotation_is_special_orthogonal(self) -> None:
        r = bloch_rotation(qubit_rotation(0.7, 1.1))
        assert np.allclose(r @ r.T, np.eye(3))
        assert np.linalg.det(r) == pytest.approx(1.0)
        assert np.allclose(bloch_rotation(np.eye(2)), np.eye(3))

    def test_hemisphere_frames(self) -> None:
        frames = hemisphere_frames(16)
        assert np.allclose(frames[0], np.eye(3))
        tips = frames @ np.array([0.0, 0.0, 1.0])
        assert np.all(tips[:, 2] > 0.0)
        assert np.allclose(np.linalg.norm(tips, axis=-1), 1.0)

    def test_equatorial_directions(self) -> None:
        dirs = equatorial_directions(4)
        assert np.allclose(dirs[0], [1, 0, 0])
        assert np.allclose(dirs[2], [0, 1, 0])
        assert np.allclose(dirs[:, 2], 0.0)

    def test_random_frames_are_orthogonal(self) -> None:
        frames = random_frames(10, RngStream(1).generator())
        assert np.allclose(frames @ np.swapaxes(frames, -1, -2), np.eye(3))


class TestOptimizationSpec:
    def test_pair_count(self) -> None:
        assert OptimizationSpec(10).n_pairs == 2
        assert OptimizationSpec(10, mode="optimize_3mub").n_pairs == 3

    @pytest.mark.parametrize("kwargs", [{"n_states": 0}, {"n_states": 5, "mode": "everything"}, {"n_states": 5, "n_directions": 0}])
    def test_validation(self, kwargs: dict) -> None:
        with pytest.raises(ValueError):
            OptimizationSpec(**kwargs)

    def test_mode_dispatch_is_exhaustive(self) -> None:
        bloch = BlochData.from_states(random_density_matrices(4, 3, RngStream(1)))
        with pytest.raises(AssertionError):
            _statistic(SimpleNamespace(mode="everything"), bloch, None)


class TestRunBasisOptimization:
    def test_histograms_cover_every_state(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(N_STATES, 12, "optimize_second", RngStream(3), n_bins=20))
        assert summary.histogram_entangled.sum() == summary.n_entangled
        assert summary.histogram_separable.sum() == N_STATES - summary.n_entangled
        assert len(summary.bin_edges) == 21
        assert summary.bin_edges[-1] == pytest.approx(2.0)

    def test_modes_are_nested(self) -> None:
        fixed, second, both = compare_modes(N_STATES, 12, rng=RngStream(21), n_bins=10)
        assert fixed.n_entangled == second.n_entangled == both.n_entangled
        assert fixed.n_detected <= second.n_detected <= both.n_detected
        assert fixed.detected_fraction <= second.detected_fraction <= both.detected_fraction

    def test_fixed_mode_matches_two_basis_pearson(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(N_STATES, 1, "fixed", RngStream(33)))
        tally = run_montecarlo(N_STATES, ("pearson2",), RngStream(33), threads=1, chunk_size=N_STATES)
        assert summary.n_entangled == tally.n_entangled
        assert summary.n_detected == tally.detected_entangled["pearson2"]
        assert summary.n_false_positive == tally.false_positives("pearson2")

    def test_three_basis_search_never_loses_to_pauli(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(N_STATES, 20, "optimize_3mub", RngStream(34), n_bins=30))
        tally = run_montecarlo(N_STATES, ("pearson3",), RngStream(34), threads=1, chunk_size=N_STATES)
        assert summary.n_detected >= tally.detected_entangled["pearson3"]
        assert summary.bin_edges[-1] == pytest.approx(3.0)

    def test_to_dict(self) -> None:
        d = run_basis_optimization(OptimizationSpec(50, 4, "fixed", RngStream(1), n_bins=5)).to_dict()
        assert d["mode"] == "fixed"
        assert len(d["histogram_entangled"]) == 5
        assert sum(d["histogram_entangled"]) + sum(d["histogram_separable"]) == 50


class TestReferenceFractions:
    def test_fixed_two_basis_fraction(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(20000, 1, "fixed", RngStream(40)))
        assert summary.detected_fraction == pytest.approx(0.0133, abs=0.006)
        assert summary.n_false_positive == 0

    def test_three_basis_search_beats_pauli_by_far(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(2000, 100, "optimize_3mub", RngStream(41)))
        tally = run_montecarlo(2000, ("pearson3",), RngStream(41), threads=1, chunk_size=2000)
        assert summary.detected_fraction > 2 * tally.detection_rate("pearson3")
        assert summary.n_false_positive == 0


@pytest.mark.slow
class TestDeskScaleOptimization:
    def test_modes_strictly_increase(self) -> None:
        fixed, second, both = compare_modes(10**5, 40, rng=RngStream(50))
        assert fixed.detected_fraction < second.detected_fraction < both.detected_fraction
        assert fixed.detected_fraction == pytest.approx(0.0133, abs=0.003)

    def test_three_basis_pauli_fraction(self) -> None:
        tally = run_montecarlo(10**5, ("pearson3",), RngStream(51))
        assert tally.detection_rate("pearson3") == pytest.approx(0.0965, abs=0.003)

    def test_three_basis_optimised_fraction(self) -> None:
        summary = run_basis_optimization(OptimizationSpec(10**4, 1000, "optimize_3mub", RngStream(52)))
        assert summary.detected_fraction >= 0.40

# 🧪🎯
