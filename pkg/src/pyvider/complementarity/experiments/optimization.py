#
# optimization.py
#
"""
How much the Pearson criterion gains when the complementary observables are
optimised per state instead of fixed to the Pauli bases.

Candidate sets are nested (fixed ⊆ optimize_second ⊆ optimize_both for the same
`n_directions`), so on a common sample the detected fraction cannot decrease
along that chain.
"""

import sys
from typing import Any

if sys.version_info >= (3, 11):
    from typing import assert_never
else:  # pragma: no cover
    from typing_extensions import assert_never

from attrs import define, field, validators
import numpy as np

from pyvider.complementarity.bases import qubit_rotation
from pyvider.complementarity.experiments.kernels import (
    PAULI_DIRECTIONS,
    BlochData,
    FloatArray,
    pearson_directions,
    ppt_entangled,
)
from pyvider.complementarity.logger import logger
from pyvider.complementarity.qmat import PAULIS
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import random_density_matrices
from pyvider.complementarity.types import (
    _VALID_OPTIMIZATION_MODE_TUPLE,
    DETECTION_SLACK,
    OptimizationMode,
)
from pyvider.complementarity.utils import timed_block

DEFAULT_BINS = 200
DEFAULT_DIRECTIONS = 1000
_DIRECTION_STREAM_OFFSET = 1 << 32
_CANDIDATE_BUDGET = 1 << 21
_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))

_Z = PAULI_DIRECTIONS[0]


@define(frozen=True, slots=True)
class OptimizationSpec:
    n_states: int = field(validator=[validators.instance_of(int), validators.ge(1)])
    n_directions: int = field(default=DEFAULT_DIRECTIONS, validator=[validators.instance_of(int), validators.ge(1)])
    mode: OptimizationMode = field(default="fixed", validator=validators.in_(_VALID_OPTIMIZATION_MODE_TUPLE))
    rng: RngStream = field(factory=lambda: RngStream(42))
    n_bins: int = field(default=DEFAULT_BINS, validator=validators.ge(1))

    @property
    def n_pairs(self) -> int:
        return 3 if self.mode == "optimize_3mub" else 2


@define(frozen=True, slots=True, eq=False)
class OptimizationSummary:
    mode: OptimizationMode
    n_states: int
    n_directions: int
    n_pairs: int
    n_entangled: int
    n_detected: int
    n_false_positive: int
    bin_edges: FloatArray = field(repr=False)
    histogram_entangled: np.ndarray = field(repr=False)
    histogram_separable: np.ndarray = field(repr=False)

    @property
    def detected_fraction(self) -> float:
        """Share of oracle-entangled states whose optimised Σ|C| exceeds 1."""
        return self.n_detected / self.n_entangled if self.n_entangled else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "n_states": self.n_states,
            "n_directions": self.n_directions,
            "n_pairs": self.n_pairs,
            "n_entangled": self.n_entangled,
            "n_detected": self.n_detected,
            "n_false_positive": self.n_false_positive,
            "detected_fraction": self.detected_fraction,
            "bin_edges": [float(x) for x in self.bin_edges],
            "histogram_entangled": [int(x) for x in self.histogram_entangled],
            "histogram_separable": [int(x) for x in self.histogram_separable],
        }


def bloch_rotation(u: np.ndarray) -> FloatArray:
    """SO(3) matrix R_ij = Tr[σ_i U σ_j U†]/2 of a qubit unitary."""
    return np.array([[np.real(np.trace(p @ u @ q @ u.conj().T)) / 2.0 for q in PAULIS] for p in PAULIS])


def hemisphere_frames(count: int) -> FloatArray:
    """`count` rotations whose images of ẑ spread over the upper hemisphere; frame 0 is the identity."""
    frames = [np.eye(3)]
    for f in range(1, count):
        cos_theta = 1.0 - (f + 0.5) / count
        theta = float(np.arccos(cos_theta))
        azimuth = f * _GOLDEN_ANGLE
        frames.append(bloch_rotation(qubit_rotation(theta, azimuth + np.pi / 2.0)))
    return np.array(frames)


def equatorial_directions(count: int) -> FloatArray:
    """φ_k = πk/count in the x-y plane; k = 0 is x̂."""
    phi = np.pi * np.arange(count) / count
    return np.stack([np.cos(phi), np.sin(phi), np.zeros(count)], axis=-1)


def random_frames(count: int, gen: np.random.Generator) -> FloatArray:
    """Haar-random orthogonal 3×3 frames; columns are three orthogonal Bloch directions."""
    q, r = np.linalg.qr(gen.standard_normal((count, 3, 3)))
    return q * np.sign(np.diagonal(r, axis1=-2, axis2=-1))[:, None, :]


def _abs_pearson(bloch: BlochData, n: FloatArray, m: FloatArray, extra_axes: int) -> FloatArray:
    shape = (slice(None),) + (None,) * extra_axes
    return np.abs(pearson_directions(bloch.a[shape], bloch.b[shape], bloch.T[shape], n, m))


def _fixed_statistic(bloch: BlochData) -> FloatArray:
    dirs = PAULI_DIRECTIONS[None, :2]
    return _abs_pearson(bloch, dirs, dirs, 1).sum(axis=-1)


def _second_statistic(bloch: BlochData, n_directions: int) -> FloatArray:
    zz = _abs_pearson(bloch, _Z, _Z, 0)
    eq = equatorial_directions(n_directions)[None]
    return zz + _abs_pearson(bloch, eq, eq, 1).max(axis=-1)


def _both_statistic(bloch: BlochData, n_directions: int) -> FloatArray:
    frames = hemisphere_frames(n_directions)
    first = np.einsum("fij,j->fi", frames, _Z)[None]
    second = np.einsum("fij,kj->fki", frames, equatorial_directions(n_directions))[None]
    c_first = _abs_pearson(bloch, first, first, 1)
    c_second = _abs_pearson(bloch, second, second, 2).max(axis=-1)
    return (c_first + c_second).max(axis=-1)


def _frame_pair_statistic(bloch: BlochData, frames_a: FloatArray, frames_b: FloatArray, extra_axes: int) -> FloatArray:
    # Directions are the frame columns; move them to the second-to-last axis.
    dirs_a = np.swapaxes(frames_a, -1, -2)
    dirs_b = np.swapaxes(frames_b, -1, -2)
    return _abs_pearson(bloch, dirs_a, dirs_b, extra_axes + 1).sum(axis=-1)


def _svd_frames(matrix: FloatArray) -> tuple[FloatArray, FloatArray]:
    u, _, vt = np.linalg.svd(matrix)
    return u, np.swapaxes(vt, -1, -2)


def _three_statistic(bloch: BlochData, frames_a: FloatArray, frames_b: FloatArray) -> FloatArray:
    best = _frame_pair_statistic(bloch, frames_a[None], frames_b[None], 1).max(axis=-1)
    covariance = bloch.T - np.einsum("ni,nj->nij", bloch.a, bloch.b)
    for matrix in (covariance, bloch.T):
        u, v = _svd_frames(matrix)
        best = np.maximum(best, _frame_pair_statistic(bloch, u, v, 0))
    return best


def _statistic(spec: OptimizationSpec, bloch: BlochData, frames: tuple[FloatArray, FloatArray] | None) -> FloatArray:
    match spec.mode:
        case "fixed":
            return _fixed_statistic(bloch)
        case "optimize_second":
            return _second_statistic(bloch, spec.n_directions)
        case "optimize_both":
            return _both_statistic(bloch, spec.n_directions)
        case "optimize_3mub":
            assert frames is not None
            return _three_statistic(bloch, *frames)
        case unreachable:  # pragma: no cover
            assert_never(unreachable)


def _state_chunk(spec: OptimizationSpec) -> int:
    """States per vectorised block, keeping (states × candidates) bounded."""
    per_state = {
        "fixed": 2,
        "optimize_second": spec.n_directions,
        "optimize_both": spec.n_directions * spec.n_directions,
        "optimize_3mub": 3 * (spec.n_directions + 3),
    }[spec.mode]
    return max(1, _CANDIDATE_BUDGET // per_state)


def _candidate_frames(spec: OptimizationSpec) -> tuple[FloatArray, FloatArray] | None:
    if spec.mode != "optimize_3mub":
        return None
    gen = spec.rng.substream(_DIRECTION_STREAM_OFFSET).generator()
    identity = np.eye(3)[None]
    frames_a = np.concatenate([identity, random_frames(spec.n_directions, gen)])
    frames_b = np.concatenate([identity, random_frames(spec.n_directions, gen)])
    return frames_a, frames_b


def run_basis_optimization(spec: OptimizationSpec) -> OptimizationSummary:
    """Maximise Σ|C| per state over the mode's candidate bases and histogram the result."""
    rhos = random_density_matrices(4, spec.n_states, spec.rng)
    frames = _candidate_frames(spec)
    chunk = _state_chunk(spec)
    with timed_block(logger.get_logger(__name__), "basis optimisation", domain="optimize", action="optimize",
                     mode=spec.mode, n_states=spec.n_states, n_directions=spec.n_directions) as kv:
        entangled = ppt_entangled(rhos)
        statistic = np.concatenate([
            _statistic(spec, BlochData.from_states(rhos[start:start + chunk]), frames)
            for start in range(0, spec.n_states, chunk)
        ])
        detected = (statistic - 1.0) > DETECTION_SLACK
        edges = np.linspace(0.0, float(spec.n_pairs), spec.n_bins + 1)
        hist_ent, _ = np.histogram(statistic[entangled], bins=edges)
        hist_sep, _ = np.histogram(statistic[~entangled], bins=edges)
        summary = OptimizationSummary(
            mode=spec.mode,
            n_states=spec.n_states,
            n_directions=spec.n_directions,
            n_pairs=spec.n_pairs,
            n_entangled=int(entangled.sum()),
            n_detected=int((detected & entangled).sum()),
            n_false_positive=int((detected & ~entangled).sum()),
            bin_edges=edges,
            histogram_entangled=hist_ent,
            histogram_separable=hist_sep,
        )
        kv["detected_fraction"] = round(summary.detected_fraction, 6)
    if summary.n_false_positive:
        logger.get_logger(__name__).warning(
            "optimised Pearson statistic flagged PPT-positive states",
            domain="optimize", action="detect", status="finding",
            mode=spec.mode, count=summary.n_false_positive,
        )
    return summary


def compare_modes(
    n_states: int,
    n_directions: int,
    modes: tuple[OptimizationMode, ...] = ("fixed", "optimize_second", "optimize_both"),
    rng: RngStream | None = None,
    n_bins: int = DEFAULT_BINS,
) -> list[OptimizationSummary]:
    """Runs several modes on the same state sample."""
    stream = rng if rng is not None else RngStream(42)
    return [
        run_basis_optimization(OptimizationSpec(n_states, n_directions, mode, stream, n_bins))
        for mode in modes
    ]

# 🎯📈
