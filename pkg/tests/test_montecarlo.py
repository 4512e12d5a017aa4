#
# tests/test_montecarlo.py
#
"""
Tests for the Monte Carlo detector comparison.
"""
import json
from typing import TextIO

import numpy as np
import pytest

from pyvider.complementarity import ComplementarityConfig, setup_logging
from pyvider.complementarity.config import RuntimeConfig
from pyvider.complementarity.errors import ContractViolationError, ParameterRangeError, UnknownNameError
from pyvider.complementarity.experiments.montecarlo import (
    DEFAULT_DETECTORS,
    LUR_DETECTORS,
    _report_findings,
    chunk_plan,
    run_lur_comparison,
    run_montecarlo,
)
from pyvider.complementarity.experiments.tally import TallyMatrix
from pyvider.complementarity.rng import RngStream

ENTANGLED_FRACTION = 0.3687
CONJECTURED = ("pearson2", "pearson_product", "condprob")


def _records(stream: TextIO) -> list[dict]:
    return [json.loads(line) for line in stream.getvalue().splitlines() if line.strip()]


class TestChunkPlan:
    def test_covers_all_samples(self) -> None:
        assert chunk_plan(10, 4) == [(0, 4), (1, 4), (2, 2)]
        assert chunk_plan(0, 4) == []

    @pytest.mark.parametrize(("n", "chunk"), [(-1, 4), (10, 0)])
    def test_rejects_bad_arguments(self, n: int, chunk: int) -> None:
        with pytest.raises(ParameterRangeError):
            chunk_plan(n, chunk)


class TestRunMontecarlo:
    def test_worker_count_does_not_change_results(self) -> None:
        serial = run_montecarlo(3000, rng=RngStream(1), threads=1, chunk_size=400)
        parallel = run_montecarlo(3000, rng=RngStream(1), threads=4, chunk_size=400)
        assert serial == parallel

    def test_same_seed_same_tally(self) -> None:
        a = run_montecarlo(500, rng=RngStream(8), chunk_size=100)
        b = run_montecarlo(500, rng=RngStream(8), chunk_size=100)
        c = run_montecarlo(500, rng=RngStream(9), chunk_size=100)
        assert a == b
        assert a != c

    def test_runtime_config_supplies_defaults(self) -> None:
        explicit = run_montecarlo(300, rng=RngStream(2), threads=1, chunk_size=64)
        from_runtime = run_montecarlo(300, rng=RngStream(2), runtime=RuntimeConfig(threads=3, chunk_size=64))
        assert explicit == from_runtime

    def test_tally_is_consistent(self) -> None:
        tally = run_montecarlo(4000, rng=RngStream(12))
        assert tally.detectors == DEFAULT_DETECTORS
        assert tally.n_samples == 4000
        assert tally.union_detected == sum(tally.venn.values())
        assert tally.union_entangled <= tally.n_entangled
        for name in ("witness", "pearson3", "mi3"):
            assert tally.false_positives(name) == 0
            assert tally.detected_entangled[name] <= tally.n_entangled

    def test_entangled_fraction(self) -> None:
        tally = run_montecarlo(20000, ("witness",), RngStream(2024))
        sigma = np.sqrt(ENTANGLED_FRACTION * (1 - ENTANGLED_FRACTION) / 20000)
        assert abs(tally.entangled_fraction - ENTANGLED_FRACTION) < 5 * sigma

    def test_zero_samples(self) -> None:
        tally = run_montecarlo(0, rng=RngStream(1))
        assert tally.n_samples == 0
        assert tally.venn == {}

    def test_bad_detector_names(self) -> None:
        with pytest.raises(UnknownNameError):
            run_montecarlo(10, ("witness", "magic"))
        with pytest.raises(ContractViolationError):
            run_montecarlo(10, ("mi", "mi"))

    def test_lur_comparison(self) -> None:
        tally = run_lur_comparison(2000, RngStream(5), threads=1)
        assert tally.detectors == LUR_DETECTORS
        assert tally.false_positives("lur") == 0
        assert tally.false_positives("pearson3") == 0


class TestLogging:
    def test_run_is_timed(self, captured_log_stream: TextIO, json_debug_config: ComplementarityConfig) -> None:
        setup_logging(json_debug_config)
        run_montecarlo(200, rng=RngStream(4), threads=1, chunk_size=100)
        (run,) = [r for r in _records(captured_log_stream) if r["event"] == "montecarlo run"]
        assert run["outcome"] == "success"
        assert run["chunks"] == 2
        assert run["domain"] == "montecarlo"
        assert run["status"] == "success"
        assert run["logger_name"] == "pyvider.complementarity.experiments.montecarlo"
        assert run["per_second"] > 0
        assert 0.0 <= run["entangled_fraction"] <= 1.0

    def test_findings_are_warnings(self, captured_log_stream: TextIO, json_debug_config: ComplementarityConfig) -> None:
        setup_logging(json_debug_config)
        tally = TallyMatrix.from_masks(
            ("condprob", "witness"),
            np.array([False, True]),
            np.array([[True, False], [True, True]]),
        )
        _report_findings(tally)
        (finding,) = _records(captured_log_stream)
        assert finding["level"] == "warning"
        assert finding["detector"] == "condprob"
        assert finding["count"] == 1
        assert finding["conjectured"] is True
        assert finding["status"] == "finding"


def _lur_only_cells(n: int, seed: int) -> tuple[float, int]:
    versus_three = run_montecarlo(n, ("pearson3", "lur"), RngStream(seed))
    versus_two = run_montecarlo(n, ("pearson2", "lur"), RngStream(seed))
    assert versus_three.n_entangled == versus_two.n_entangled
    return versus_three.venn_fraction(("lur",)), versus_two.venn_count(("lur",))


class TestConjecturesAndLur:
    def test_conjectures_hold_on_ppt_states(self) -> None:
        tally = run_montecarlo(20000, CONJECTURED, RngStream(77))
        assert {name: tally.false_positives(name) for name in CONJECTURED} == dict.fromkeys(CONJECTURED, 0)

    def test_lur_adds_little_to_pearson(self) -> None:
        lur_only_vs_three, lur_only_vs_two = _lur_only_cells(20000, 78)
        assert lur_only_vs_three <= 0.02
        assert lur_only_vs_two == 0


@pytest.mark.slow
class TestDeskScaleReproduction:
    def test_million_sample_detection_power(self) -> None:
        tally = run_montecarlo(10**6, ("witness", "pearson3"), RngStream(42))
        assert tally.entangled_fraction == pytest.approx(0.3687, abs=0.003)
        assert tally.detection_rate("pearson3") == pytest.approx(0.0967, abs=0.003)
        assert tally.detection_rate("witness") == pytest.approx(0.0861, abs=0.003)
        assert tally.union_rate == pytest.approx(0.1141, abs=0.003)
        assert tally.venn_fraction(("witness",)) == pytest.approx(0.1523, abs=0.01)
        assert tally.venn_fraction(("pearson3",)) == pytest.approx(0.2448, abs=0.01)
        assert tally.venn_fraction(("witness", "pearson3")) == pytest.approx(0.6029, abs=0.01)

    def test_million_sample_conjectures_hold(self) -> None:
        tally = run_montecarlo(10**6, CONJECTURED, RngStream(43))
        for name in CONJECTURED:
            assert tally.false_positives(name) == 0, name

    def test_million_sample_lur_comparison(self) -> None:
        lur_only_vs_three, lur_only_vs_two = _lur_only_cells(10**6, 44)
        assert lur_only_vs_three <= 0.007
        assert lur_only_vs_two == 0

# 🧪🎲
