#
# montecarlo.py
#
"""
Monte Carlo comparison of detectors on random two-qubit states (Haar eigenvectors, flat spectrum).

The sample range [0, n) is cut into chunks of `chunk_size`; chunk k draws its
states from `rng.substream(k)`. Chunk tallies are merged by summation, so the
result depends on (n, seed, chunk_size) and never on the worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import reduce

from pyvider.complementarity.config import RuntimeConfig
from pyvider.complementarity.core import active_config
from pyvider.complementarity.errors import ParameterRangeError
from pyvider.complementarity.experiments.kernels import (
    CONJECTURED_DETECTORS,
    check_detector_names,
    evaluate_batch,
)
from pyvider.complementarity.experiments.tally import TallyMatrix
from pyvider.complementarity.logger import logger
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import random_density_matrices
from pyvider.complementarity.utils import timed_block

DEFAULT_DETECTORS: tuple[str, ...] = ("witness", "pearson3", "condprob", "mi3")
LUR_DETECTORS: tuple[str, ...] = ("pearson3", "pearson2", "lur")
DEFAULT_SEED = 42


def chunk_plan(n: int, chunk_size: int) -> list[tuple[int, int]]:
    """(chunk index, sample count) pairs covering n samples."""
    if n < 0:
        raise ParameterRangeError(f"n must be non-negative, got {n}")
    if chunk_size < 1:
        raise ParameterRangeError(f"chunk_size must be positive, got {chunk_size}")
    return [(k, min(chunk_size, n - start)) for k, start in enumerate(range(0, n, chunk_size))]


def _run_chunk(detectors: tuple[str, ...], rng: RngStream, count: int) -> TallyMatrix:
    rhos = random_density_matrices(4, count, rng)
    entangled, hits = evaluate_batch(rhos, detectors)
    return TallyMatrix.from_masks(detectors, entangled, hits)


def _resolve_runtime(runtime: RuntimeConfig | None, threads: int | None, chunk_size: int | None) -> RuntimeConfig:
    base = runtime if runtime is not None else active_config().runtime
    return RuntimeConfig(
        threads=threads if threads is not None else base.threads,
        chunk_size=chunk_size if chunk_size is not None else base.chunk_size,
    )


def _report_findings(tally: TallyMatrix) -> None:
    log = logger.get_logger(__name__)
    for name in tally.detectors:
        false_positives = tally.false_positives(name)
        if false_positives:
            log.warning(
                "detector flagged PPT-positive states",
                domain="montecarlo", action="detect", status="finding",
                detector=name, count=false_positives, conjectured=name in CONJECTURED_DETECTORS,
            )


def run_montecarlo(
    n: int,
    detectors: tuple[str, ...] = DEFAULT_DETECTORS,
    rng: RngStream | None = None,
    *,
    runtime: RuntimeConfig | None = None,
    threads: int | None = None,
    chunk_size: int | None = None,
) -> TallyMatrix:
    """Tally oracle verdicts, detector hits and Venn cells over n random 4×4 states."""
    detectors = check_detector_names(tuple(detectors))
    stream = rng if rng is not None else RngStream(DEFAULT_SEED)
    settings = _resolve_runtime(runtime, threads, chunk_size)
    plan = chunk_plan(n, settings.chunk_size)

    with timed_block(logger.get_logger(__name__), "montecarlo run", domain="montecarlo", action="run",
                     n=n, seed=stream.seed, detectors=",".join(detectors),
                     chunks=len(plan), threads=settings.threads) as kv:
        if settings.threads == 1 or len(plan) <= 1:
            parts = [_run_chunk(detectors, stream.substream(k), count) for k, count in plan]
        else:
            with ThreadPoolExecutor(max_workers=settings.threads) as pool:
                parts = list(pool.map(lambda job: _run_chunk(detectors, stream.substream(job[0]), job[1]), plan))
        tally = reduce(TallyMatrix.merge, parts, TallyMatrix.empty(detectors))
        kv["entangled_fraction"] = round(tally.entangled_fraction, 6)
        kv["union_rate"] = round(tally.union_rate, 6)

    _report_findings(tally)
    return tally


def run_lur_comparison(
    n: int,
    rng: RngStream | None = None,
    *,
    runtime: RuntimeConfig | None = None,
    threads: int | None = None,
    chunk_size: int | None = None,
) -> TallyMatrix:
    """Venn cells for the three-basis Pearson, two-basis Pearson and LUR detectors."""
    return run_montecarlo(n, LUR_DETECTORS, rng, runtime=runtime, threads=threads, chunk_size=chunk_size)

# 🎲📊
