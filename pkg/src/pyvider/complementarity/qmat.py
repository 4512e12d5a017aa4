#
# qmat.py
#
"""
Dense complex linear algebra for small bipartite systems.

Bipartite indices are subsystem-A-major: global index = a·dB + b. Every helper
here follows that convention; the `*_array` variants also accept stacked
`(..., n, n)` inputs so batch kernels can share them.
"""

from typing import Any

from attrs import define, field
import numpy as np
import numpy.typing as npt

from pyvider.complementarity.errors import (
    ContractViolationError,
    DimensionMismatchError,
    InvalidDensityMatrixError,
    InvalidDimensionError,
)
from pyvider.complementarity.types import (
    HERMITIAN_TOL,
    MAX_SUBSYSTEM_DIM,
    PSD_TOL,
    TRACE_TOL,
    Subsystem,
)

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

IDENTITY2: ComplexMatrix = np.eye(2, dtype=np.complex128)
PAULI_X: ComplexMatrix = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y: ComplexMatrix = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z: ComplexMatrix = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix] = (PAULI_X, PAULI_Y, PAULI_Z)

for _m in (IDENTITY2, *PAULIS):
    _m.setflags(write=False)


def _readonly_complex(m: Any) -> ComplexMatrix:
    arr = np.array(m, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


def check_subsystem_dim(d: int) -> int:
    if not isinstance(d, int | np.integer) or not 2 <= int(d) <= MAX_SUBSYSTEM_DIM:
        raise InvalidDimensionError(f"subsystem dimension must be an integer in [2, {MAX_SUBSYSTEM_DIM}], got {d!r}")
    return int(d)


def as_complex_matrix(m: Any, *, square: bool = True) -> ComplexMatrix:
    """Coerces to a 2-D complex array, rejecting non-finite entries and (optionally) non-square shapes."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ContractViolationError(f"expected a 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise ContractViolationError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractViolationError("matrix has non-finite entries")
    return arr


def hermiticity_error(m: ComplexMatrix) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(m) <= tol


def hermitian_eigendecomposition(m: Any) -> tuple[RealVector, ComplexMatrix]:
    """Eigenvalues ascending and orthonormal eigenvectors as columns."""
    arr = as_complex_matrix(m)
    if not is_hermitian(arr):
        raise ContractViolationError(f"matrix is not Hermitian (max |M - M†| = {hermiticity_error(arr):.3e})")
    vals, vecs = np.linalg.eigh(arr)
    return vals.astype(np.float64), vecs


def tensor_product(a: Any, b: Any) -> ComplexMatrix:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def ket(d: int, i: int) -> ComplexMatrix:
    v = np.zeros(d, dtype=np.complex128)
    v[i] = 1.0
    return v


def projector(v: Any) -> ComplexMatrix:
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    return np.outer(vec, vec.conj())


def validate_density_matrix(m: ComplexMatrix) -> None:
    """Raises InvalidDensityMatrixError unless m is Hermitian, unit trace and PSD within tolerance."""
    herm_err = hermiticity_error(m)
    if herm_err > HERMITIAN_TOL:
        raise InvalidDensityMatrixError(f"not Hermitian: max |M - M†| = {herm_err:.3e}")
    trace = complex(np.trace(m))
    if abs(trace - 1.0) > TRACE_TOL:
        raise InvalidDensityMatrixError(f"trace is {trace.real:.12g}, expected 1")
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -PSD_TOL:
        raise InvalidDensityMatrixError(f"not positive semidefinite: minimum eigenvalue {min_eig:.3e}")


def is_density_matrix(m: Any) -> bool:
    try:
        validate_density_matrix(as_complex_matrix(m))
    except ContractViolationError:
        return False
    return True


@define(frozen=True, slots=True, eq=False)
class DensityMatrix:
    """Validated quantum state ρ. The wrapped array is read-only."""
    matrix: ComplexMatrix = field(converter=_readonly_complex)

    def __attrs_post_init__(self) -> None:
        as_complex_matrix(self.matrix)
        validate_density_matrix(self.matrix)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def from_pure(cls, psi: Any) -> "DensityMatrix":
        vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
        return cls(projector(vec / np.linalg.norm(vec)))

    def allclose(self, other: "DensityMatrix | ComplexMatrix", atol: float = 1e-10) -> bool:
        other_m = other.matrix if isinstance(other, DensityMatrix) else np.asarray(other)
        return self.matrix.shape == other_m.shape and bool(np.allclose(self.matrix, other_m, atol=atol, rtol=0.0))


@define(frozen=True, slots=True, eq=False)
class BipartiteState:
    """A density matrix on C^dA ⊗ C^dB with dA = dB."""
    dA: int = field(converter=int)
    dB: int = field(converter=int)
    state: DensityMatrix = field()

    def __attrs_post_init__(self) -> None:
        check_subsystem_dim(self.dA)
        check_subsystem_dim(self.dB)
        if self.dA != self.dB:
            raise DimensionMismatchError(f"unequal subsystem dimensions {self.dA} and {self.dB} are not supported")
        if self.state.dim != self.dA * self.dB:
            raise DimensionMismatchError(
                f"state dimension {self.state.dim} does not equal dA·dB = {self.dA * self.dB}"
            )

    @classmethod
    def from_matrix(cls, m: Any, d: int | None = None) -> "BipartiteState":
        """Wraps a (d²×d²) array, inferring d from its size when omitted."""
        arr = as_complex_matrix(m)
        if d is None:
            root = int(round(np.sqrt(arr.shape[0])))
            if root * root != arr.shape[0]:
                raise DimensionMismatchError(f"matrix size {arr.shape[0]} is not a perfect square")
            d = root
        return cls(d, d, DensityMatrix(arr))

    @classmethod
    def from_pure(cls, psi: Any, d: int | None = None) -> "BipartiteState":
        vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
        return cls.from_matrix(projector(vec / np.linalg.norm(vec)), d)

    @property
    def d(self) -> int:
        return self.dA

    @property
    def matrix(self) -> ComplexMatrix:
        return self.state.matrix


def partial_transpose_array(m: Any, dA: int, dB: int, subsystem: Subsystem = "B") -> ComplexMatrix:
    arr = np.asarray(m, dtype=np.complex128)
    batch = arr.shape[:-2]
    t = arr.reshape(*batch, dA, dB, dA, dB)
    match subsystem:
        case "A":
            t = np.swapaxes(t, -4, -2)
        case "B":
            t = np.swapaxes(t, -3, -1)
        case _:
            raise ContractViolationError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return np.ascontiguousarray(t).reshape(*batch, dA * dB, dA * dB)


def partial_transpose(s: BipartiteState, subsystem: Subsystem = "B") -> ComplexMatrix:
    """Transposes the chosen tensor factor. Trace and hermiticity are preserved."""
    return partial_transpose_array(s.matrix, s.dA, s.dB, subsystem)


def partial_trace_array(m: Any, dA: int, dB: int, keep: Subsystem = "A") -> ComplexMatrix:
    arr = np.asarray(m, dtype=np.complex128)
    batch = arr.shape[:-2]
    t = arr.reshape(*batch, dA, dB, dA, dB)
    match keep:
        case "A":
            return np.einsum("...ijkj->...ik", t)
        case "B":
            return np.einsum("...ijil->...jl", t)
        case _:
            raise ContractViolationError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace(s: BipartiteState, keep: Subsystem = "A") -> DensityMatrix:
    return DensityMatrix(partial_trace_array(s.matrix, s.dA, s.dB, keep))


def min_partial_transpose_eigenvalue(s: BipartiteState) -> float:
    return float(np.linalg.eigvalsh(partial_transpose(s, "B"))[0])


def purity(rho: DensityMatrix | BipartiteState) -> float:
    m = rho.matrix
    return float(np.real(np.einsum("ij,ji->", m, m)))


def expectation(rho: DensityMatrix | BipartiteState, operator: Any) -> complex:
    """Tr[ρ O]."""
    op = np.asarray(operator, dtype=np.complex128)
    if op.shape != rho.matrix.shape:
        raise DimensionMismatchError(f"operator shape {op.shape} does not match state shape {rho.matrix.shape}")
    return complex(np.einsum("ij,ji->", rho.matrix, op))


def is_unitary(u: ComplexMatrix, tol: float) -> bool:
    n = u.shape[0]
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(n))) <= tol)

# 🧮✨
