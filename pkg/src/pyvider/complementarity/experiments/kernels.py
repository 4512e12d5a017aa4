#
# kernels.py
#
"""
Vectorised two-qubit detectors for stacks of 4×4 density matrices.

Each state is reduced to its Bloch data ρ = (I + a·σ⊗I + I⊗b·σ + Σ T_ij σ_i⊗σ_j)/4.
For measurement directions n, m the linear-observable Pearson coefficient is
(nᵀTm − (n·a)(m·b)) / √((1 − (n·a)²)(1 − (m·b)²)), identical to the scalar
definition in `correlations` because Pearson is invariant under affine
relabelling of outcomes.
"""

from collections.abc import Callable

from attrs import define
import numpy as np
import numpy.typing as npt

from pyvider.complementarity.criteria import PHI_PLUS_WITNESS_COEFFICIENTS, WITNESS_COEFFICIENTS
from pyvider.complementarity.errors import ContractViolationError, UnknownNameError
from pyvider.complementarity.qmat import IDENTITY2, PAULIS, ComplexMatrix, partial_transpose_array
from pyvider.complementarity.types import DETECTION_SLACK, PPT_SLACK, PROBABILITY_FLOOR

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]

# Rows are the Bloch directions of the first vector of the z, x and y bases.
PAULI_DIRECTIONS: FloatArray = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
_VARIANCE_FLOOR = 1e-24

_PAULI_PRODUCTS: ComplexMatrix = np.array(
    [[np.kron(p, q) for q in (IDENTITY2, *PAULIS)] for p in (IDENTITY2, *PAULIS)]
)


@define(frozen=True, slots=True, eq=False)
class BlochData:
    a: FloatArray
    b: FloatArray
    T: FloatArray

    @classmethod
    def from_states(cls, rhos: ComplexMatrix) -> "BlochData":
        r = np.real(np.einsum("nab,ijba->nij", rhos, _PAULI_PRODUCTS))
        return cls(a=r[:, 1:, 0], b=r[:, 0, 1:], T=r[:, 1:, 1:])

    def __len__(self) -> int:
        return int(self.a.shape[0])


def ppt_min_eigenvalues(rhos: ComplexMatrix) -> FloatArray:
    return np.linalg.eigvalsh(partial_transpose_array(rhos, 2, 2, "B"))[..., 0]


def ppt_entangled(rhos: ComplexMatrix) -> BoolArray:
    return ppt_min_eigenvalues(rhos) < -PPT_SLACK


def _dot(u: FloatArray, v: FloatArray) -> FloatArray:
    return np.einsum("...i,...i->...", u, v)


def pearson_directions(a: FloatArray, b: FloatArray, T: FloatArray, n: FloatArray, m: FloatArray) -> FloatArray:
    """Pearson coefficient for directions n on A and m on B; shapes broadcast over leading axes."""
    na = _dot(n, a)
    mb = _dot(m, b)
    ntm = np.einsum("...i,...ij,...j->...", n, T, m)
    var = (1.0 - na * na) * (1.0 - mb * mb)
    safe = np.where(var > _VARIANCE_FLOOR, var, 1.0)
    return np.where(var > _VARIANCE_FLOOR, (ntm - na * mb) / np.sqrt(safe), 0.0)


def joint_tables(a: FloatArray, b: FloatArray, T: FloatArray, n: FloatArray, m: FloatArray) -> FloatArray:
    """p(i, j) with outcome 0 ↔ +1 along the direction; trailing shape (2, 2)."""
    na = _dot(n, a)[..., None, None]
    mb = _dot(m, b)[..., None, None]
    ntm = np.einsum("...i,...ij,...j->...", n, T, m)[..., None, None]
    s = np.array([1.0, -1.0])[:, None]
    t = np.array([1.0, -1.0])[None, :]
    return np.clip((1.0 + s * na + t * mb + s * t * ntm) / 4.0, 0.0, None)


def _entropy_terms(p: FloatArray) -> FloatArray:
    safe = np.where(p > 0.0, p, 1.0)
    return -p * np.log2(safe)


def mutual_information_tables(p: FloatArray) -> FloatArray:
    h_joint = _entropy_terms(p).sum(axis=(-2, -1))
    h_a = _entropy_terms(p.sum(axis=-1)).sum(axis=-1)
    h_b = _entropy_terms(p.sum(axis=-2)).sum(axis=-1)
    return np.maximum(h_a + h_b - h_joint, 0.0)


def conditional_sum_tables(p: FloatArray) -> tuple[FloatArray, BoolArray]:
    """Identity-pairing S and a mask of samples where it is defined."""
    p_b = p.sum(axis=-2)
    defined = np.all(p_b > PROBABILITY_FLOOR, axis=-1)
    diag = np.diagonal(p, axis1=-2, axis2=-1)
    s = np.sum(diag / np.where(p_b > PROBABILITY_FLOOR, p_b, 1.0), axis=-1)
    return s, defined


@define(frozen=True, slots=True, eq=False)
class PauliStatistics:
    """Per-sample statistics on the z, x, y basis pairs (same basis on both qubits)."""
    bloch: BlochData
    pearson: FloatArray
    mutual_information: FloatArray
    conditional_sum: FloatArray
    conditional_defined: BoolArray

    @classmethod
    def from_states(cls, rhos: ComplexMatrix) -> "PauliStatistics":
        bloch = BlochData.from_states(rhos)
        a, b, t = bloch.a[:, None, :], bloch.b[:, None, :], bloch.T[:, None, :, :]
        dirs = PAULI_DIRECTIONS[None, :, :]
        tables = joint_tables(a, b, t, dirs, dirs)
        s, defined = conditional_sum_tables(tables[:, :2])
        return cls(
            bloch=bloch,
            pearson=pearson_directions(a, b, t, dirs, dirs),
            mutual_information=mutual_information_tables(tables),
            conditional_sum=s.sum(axis=-1),
            conditional_defined=np.all(defined, axis=-1),
        )


def _exceeds(value: FloatArray, threshold: float | FloatArray) -> BoolArray:
    return (value - threshold) > DETECTION_SLACK


def _pauli_witness_trace(stats: PauliStatistics, cx: int, cy: int, cz: int) -> FloatArray:
    t = stats.bloch.T
    return (1.0 + cx * t[:, 0, 0] + cy * t[:, 1, 1] + cz * t[:, 2, 2]) / 4.0


def detect_witness(stats: PauliStatistics) -> BoolArray:
    hits = np.zeros(len(stats.bloch), dtype=bool)
    for signs in WITNESS_COEFFICIENTS:
        hits |= _exceeds(-_pauli_witness_trace(stats, *signs), 0.0)
    return hits


def detect_witness_phi_plus(stats: PauliStatistics) -> BoolArray:
    return _exceeds(-_pauli_witness_trace(stats, *PHI_PLUS_WITNESS_COEFFICIENTS), 0.0)


def detect_pearson3(stats: PauliStatistics) -> BoolArray:
    return _exceeds(np.abs(stats.pearson).sum(axis=-1), 1.0)


def detect_pearson2(stats: PauliStatistics) -> BoolArray:
    return _exceeds(np.abs(stats.pearson[:, :2]).sum(axis=-1), 1.0)


def detect_pearson_product(stats: PauliStatistics) -> BoolArray:
    return _exceeds(np.abs(stats.pearson[:, 0] * stats.pearson[:, 1]), 0.25)


def detect_condprob(stats: PauliStatistics) -> BoolArray:
    s = stats.conditional_sum
    outside = _exceeds(s, 3.0) | _exceeds(1.0, s)
    return outside & stats.conditional_defined


def detect_mi(stats: PauliStatistics) -> BoolArray:
    top_two = np.sort(stats.mutual_information, axis=-1)[:, -2:].sum(axis=-1)
    return _exceeds(top_two, 1.0)


def detect_mi3(stats: PauliStatistics) -> BoolArray:
    return _exceeds(stats.mutual_information.sum(axis=-1), 1.0)


def detect_lur(stats: PauliStatistics) -> BoolArray:
    a, b, t = stats.bloch.a, stats.bloch.b, stats.bloch.T
    covariance = np.abs(t[:, 0, 0] - a[:, 0] * b[:, 0]) + np.abs(t[:, 2, 2] - a[:, 2] * b[:, 2])
    variances = (1.0 - a[:, 0] ** 2) + (1.0 - b[:, 0] ** 2) + (1.0 - a[:, 2] ** 2) + (1.0 - b[:, 2] ** 2)
    return _exceeds(covariance, variances / 2.0 - 1.0)


BATCH_DETECTORS: dict[str, Callable[[PauliStatistics], BoolArray]] = {
    "witness": detect_witness,
    "witness_phi_plus": detect_witness_phi_plus,
    "pearson3": detect_pearson3,
    "pearson2": detect_pearson2,
    "pearson_product": detect_pearson_product,
    "condprob": detect_condprob,
    "mi": detect_mi,
    "mi3": detect_mi3,
    "lur": detect_lur,
}

# A PPT-positive hit by one of these is a counterexample to a conjecture.
CONJECTURED_DETECTORS: frozenset[str] = frozenset({"pearson2", "pearson_product", "condprob"})


def check_detector_names(names: tuple[str, ...]) -> tuple[str, ...]:
    for name in names:
        if name not in BATCH_DETECTORS:
            raise UnknownNameError(f"unknown detector '{name}'; choose from {', '.join(BATCH_DETECTORS)}")
    if len(set(names)) != len(names):
        raise ContractViolationError(f"duplicate detector names in {names}")
    return names


def evaluate_batch(rhos: ComplexMatrix, detectors: tuple[str, ...]) -> tuple[BoolArray, BoolArray]:
    """Oracle verdicts (N,) and detector hits (N, len(detectors))."""
    stats = PauliStatistics.from_states(rhos)
    hits = np.zeros((rhos.shape[0], len(detectors)), dtype=bool)
    for k, name in enumerate(detectors):
        hits[:, k] = BATCH_DETECTORS[name](stats)
    return ppt_entangled(rhos), hits

# ⚡🧮
