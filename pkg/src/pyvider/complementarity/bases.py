#
# bases.py
#
"""
Measurement bases, mutually unbiased basis (MUB) sets and observables.

Each basis vector is stored with its first nonzero component real and
non-negative, so equal bases compare and serialize identically.
"""

from collections.abc import Iterator, Sequence
from itertools import combinations
from typing import Any

from attrs import define, field
import numpy as np

from pyvider.complementarity.errors import ContractViolationError, UnsupportedDimensionError
from pyvider.complementarity.qmat import (
    PAULIS,
    ComplexMatrix,
    RealVector,
    as_complex_matrix,
    check_subsystem_dim,
    is_unitary,
)
from pyvider.complementarity.rng import RngLike, as_generator
from pyvider.complementarity.types import COMPLEMENTARITY_TOL, ORTHONORMAL_TOL, UNITARY_TOL

_PHASE_EPS = 1e-12
_PRIMES_UP_TO_16 = (2, 3, 5, 7, 11, 13)


def _normalize_phases(vectors: Any) -> ComplexMatrix:
    arr = np.array(vectors, dtype=np.complex128, copy=True)
    for k in range(arr.shape[1]):
        column = arr[:, k]
        nonzero = np.flatnonzero(np.abs(column) > _PHASE_EPS)
        if nonzero.size:
            lead = column[nonzero[0]]
            arr[:, k] = column * (abs(lead) / lead)
    arr.setflags(write=False)
    return arr


@define(frozen=True, slots=True, eq=False)
class OrthonormalBasis:
    """d orthonormal vectors held as the columns of a d×d matrix."""
    vectors: ComplexMatrix = field(converter=_normalize_phases)

    def __attrs_post_init__(self) -> None:
        as_complex_matrix(self.vectors)
        gram = self.vectors.conj().T @ self.vectors
        err = float(np.max(np.abs(gram - np.eye(self.dim))))
        if err > ORTHONORMAL_TOL:
            raise ContractViolationError(f"basis vectors are not orthonormal (max Gram error {err:.3e})")

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[0])

    def __len__(self) -> int:
        return self.dim

    def vector(self, i: int) -> ComplexMatrix:
        return self.vectors[:, i]

    def projectors(self) -> ComplexMatrix:
        """Stack of |v_i⟩⟨v_i|, shape (d, d, d)."""
        return np.einsum("ik,jk->kij", self.vectors, self.vectors.conj())

    def overlaps(self, other: "OrthonormalBasis") -> RealVector:
        """|⟨self_i|other_j⟩|² as a d×d table."""
        return np.abs(self.vectors.conj().T @ other.vectors) ** 2

    def allclose(self, other: "OrthonormalBasis", atol: float = 1e-10) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.vectors, other.vectors, atol=atol, rtol=0.0))


def _complementarity_error(first: OrthonormalBasis, second: OrthonormalBasis) -> float:
    return float(np.max(np.abs(first.overlaps(second) - 1.0 / first.dim)))


@define(frozen=True, slots=True, eq=False)
class MubPair:
    first: OrthonormalBasis
    second: OrthonormalBasis

    def __attrs_post_init__(self) -> None:
        if self.first.dim != self.second.dim:
            raise ContractViolationError(f"bases have different dimensions {self.first.dim} and {self.second.dim}")
        err = _complementarity_error(self.first, self.second)
        if err > COMPLEMENTARITY_TOL:
            raise ContractViolationError(f"bases are not mutually unbiased (max overlap error {err:.3e})")

    @classmethod
    def of(cls, first: OrthonormalBasis, second: OrthonormalBasis) -> "MubPair":
        return cls(first, second)

    @property
    def dim(self) -> int:
        return self.first.dim

    @property
    def overlap_c(self) -> float:
        """max |⟨a_j|c_k⟩|; equals 1/√d for a complementary pair."""
        return float(np.sqrt(np.max(self.first.overlaps(self.second))))

    def as_set(self) -> "MubSet":
        return MubSet((self.first, self.second))


@define(frozen=True, slots=True, eq=False)
class MubSet:
    bases: tuple[OrthonormalBasis, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        if len(self.bases) < 2:
            raise ContractViolationError("a MUB set needs at least two bases")
        for i, j in combinations(range(len(self.bases)), 2):
            MubPair(self.bases[i], self.bases[j])

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, i: int) -> OrthonormalBasis:
        return self.bases[i]

    def __iter__(self) -> Iterator[OrthonormalBasis]:
        return iter(self.bases)

    def pair(self, i: int, j: int) -> MubPair:
        return MubPair(self.bases[i], self.bases[j])

    def take(self, count: int) -> "MubSet":
        if not 2 <= count <= len(self.bases):
            raise UnsupportedDimensionError(f"requested {count} bases from a set of {len(self.bases)}")
        return MubSet(self.bases[:count])


@define(frozen=True, slots=True, eq=False)
class Observable:
    """Nondegenerate observable Σ_i f_i |v_i⟩⟨v_i|."""
    basis: OrthonormalBasis
    eigenvalues: tuple[float, ...] = field(converter=lambda vals: tuple(float(v) for v in vals))

    def __attrs_post_init__(self) -> None:
        if len(self.eigenvalues) != self.basis.dim:
            raise ContractViolationError(
                f"{len(self.eigenvalues)} eigenvalues given for a basis of dimension {self.basis.dim}"
            )
        if len(set(self.eigenvalues)) != len(self.eigenvalues):
            raise ContractViolationError("observable eigenvalues must be distinct")

    @property
    def values(self) -> RealVector:
        return np.asarray(self.eigenvalues, dtype=np.float64)

    @property
    def matrix(self) -> ComplexMatrix:
        v = self.basis.vectors
        return (v * self.values) @ v.conj().T


def computational_basis(d: int) -> OrthonormalBasis:
    return OrthonormalBasis(np.eye(check_subsystem_dim(d), dtype=np.complex128))


def fourier_matrix(d: int) -> ComplexMatrix:
    d = check_subsystem_dim(d)
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)


def fourier_basis(d: int) -> OrthonormalBasis:
    """|j̄⟩ = Σ_k e^{2πi kj/d}|k⟩/√d."""
    return OrthonormalBasis(fourier_matrix(d))


def _pauli_eigenbasis_matrices() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    s = 1.0 / np.sqrt(2.0)
    z = np.eye(2, dtype=np.complex128)
    x = np.array([[s, s], [s, -s]], dtype=np.complex128)
    y = np.array([[s, s], [1j * s, -1j * s]], dtype=np.complex128)
    return z, x, y


def qubit_pauli_mubs() -> MubSet:
    """σ_z, σ_x, σ_y eigenbases, in that order."""
    return MubSet(OrthonormalBasis(m) for m in _pauli_eigenbasis_matrices())


def prime_d_mubs(d: int) -> MubSet:
    """
    All d+1 MUBs for prime d: the computational basis followed by the bases
    with vectors ω^{a x² + b x}/√d, a = 0..d-1 (a = 0 is the Fourier basis).
    d = 2 returns the Pauli eigenbases.
    """
    d = check_subsystem_dim(d)
    if d not in _PRIMES_UP_TO_16:
        raise UnsupportedDimensionError(f"full MUB sets are only constructed for prime d, got {d}")
    if d == 2:
        return qubit_pauli_mubs()
    x = np.arange(d)
    bases = [computational_basis(d)]
    for a in range(d):
        phases = (a * np.outer(x * x, np.ones(d, dtype=int)) + np.outer(x, x)) % d
        bases.append(OrthonormalBasis(np.exp(2j * np.pi * phases / d) / np.sqrt(d)))
    return MubSet(bases)


def mub_set(d: int, count: int) -> MubSet:
    """The first `count` standard MUBs in dimension d (computational, Fourier, ...)."""
    d = check_subsystem_dim(d)
    if count == 2:
        if d == 2:
            return qubit_pauli_mubs().take(2)
        return MubSet((computational_basis(d), fourier_basis(d)))
    if d not in _PRIMES_UP_TO_16:
        raise UnsupportedDimensionError(f"{count} MUBs are only available for prime d, got {d}")
    return prime_d_mubs(d).take(count)


def rotate_basis(b: OrthonormalBasis, unitary: Any) -> OrthonormalBasis:
    u = as_complex_matrix(unitary)
    if u.shape[0] != b.dim:
        raise ContractViolationError(f"unitary of size {u.shape[0]} cannot act on a basis of dimension {b.dim}")
    if not is_unitary(u, UNITARY_TOL):
        raise ContractViolationError("matrix is not unitary")
    return OrthonormalBasis(u @ b.vectors)


def conjugate_basis(b: OrthonormalBasis) -> OrthonormalBasis:
    """Complex conjugate basis; paired with `b` it yields perfect correlations on |Φ⁺⟩."""
    return OrthonormalBasis(b.vectors.conj())


def linear_observable(b: OrthonormalBasis) -> Observable:
    return Observable(b, tuple(range(b.dim)))


def haar_unitaries(d: int, count: int, rng: RngLike) -> ComplexMatrix:
    """`count` Haar-random unitaries, shape (count, d, d), from stacked QR of Ginibre matrices."""
    gen = as_generator(rng)
    z = (gen.standard_normal((count, d, d)) + 1j * gen.standard_normal((count, d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[..., None, :]


def haar_unitary(d: int, rng: RngLike) -> ComplexMatrix:
    return haar_unitaries(d, 1, rng)[0]


def qubit_rotation(theta: float, phi: float) -> ComplexMatrix:
    """exp(−iθ(cosφ σ_x + sinφ σ_y)/2)."""
    axis_op = np.cos(phi) * PAULIS[0] + np.sin(phi) * PAULIS[1]
    return np.cos(theta / 2.0) * np.eye(2) - 1j * np.sin(theta / 2.0) * axis_op


def equatorial_basis(phi: float) -> OrthonormalBasis:
    """Qubit basis (|0⟩ ± e^{iφ}|1⟩)/√2; complementary to σ_z for every φ."""
    s = 1.0 / np.sqrt(2.0)
    e = np.exp(1j * phi)
    return OrthonormalBasis(np.array([[s, s], [s * e, -s * e]], dtype=np.complex128))


def qubit_basis_from_bloch(direction: Sequence[float]) -> OrthonormalBasis:
    """Qubit basis whose first vector has Bloch vector `direction` (normalised)."""
    n = np.asarray(direction, dtype=np.float64)
    n = n / np.linalg.norm(n)
    theta = np.arccos(np.clip(n[2], -1.0, 1.0))
    phi = np.arctan2(n[1], n[0])
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return OrthonormalBasis(np.array([[c, -s], [e * s, c * e]], dtype=np.complex128))


def bloch_vector(b: OrthonormalBasis) -> RealVector:
    """Bloch vector of the first vector of a qubit basis."""
    if b.dim != 2:
        raise UnsupportedDimensionError(f"Bloch vectors are defined for qubits, got d={b.dim}")
    v = b.vector(0)
    return np.array([np.real(v.conj() @ p @ v) for p in PAULIS], dtype=np.float64)

# 🧭✨
