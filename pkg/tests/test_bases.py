#
# tests/test_bases.py
#
"""
Tests for pyvider.complementarity.bases: orthonormal bases, MUB construction
and the qubit helpers.
"""
import numpy as np
import pytest

from pyvider.complementarity.bases import (
    MubPair,
    MubSet,
    Observable,
    OrthonormalBasis,
    bloch_vector,
    computational_basis,
    conjugate_basis,
    equatorial_basis,
    fourier_basis,
    haar_unitary,
    linear_observable,
    mub_set,
    prime_d_mubs,
    qubit_basis_from_bloch,
    qubit_pauli_mubs,
    qubit_rotation,
    rotate_basis,
)
from pyvider.complementarity.errors import ContractViolationError, UnsupportedDimensionError
from pyvider.complementarity.qmat import PAULI_X, PAULI_Y, PAULI_Z, is_unitary
from pyvider.complementarity.rng import RngStream


class TestOrthonormalBasis:
    def test_rejects_non_orthonormal(self) -> None:
        with pytest.raises(ContractViolationError):
            OrthonormalBasis(np.array([[1, 1], [0, 1]]))

    def test_phase_normalisation_makes_equal_bases_identical(self) -> None:
        b = fourier_basis(3)
        rephased = OrthonormalBasis(b.vectors * np.exp(1j * np.array([0.3, 1.1, -2.0])))
        assert rephased.allclose(b)

    def test_projectors_resolve_identity(self) -> None:
        b = fourier_basis(5)
        assert np.allclose(b.projectors().sum(axis=0), np.eye(5))
        assert len(b) == 5


class TestMubConstruction:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 16])
    def test_computational_and_fourier_are_complementary(self, d: int) -> None:
        pair = MubPair.of(computational_basis(d), fourier_basis(d))
        assert pair.overlap_c == pytest.approx(1 / np.sqrt(d))
        assert len(pair.as_set()) == 2

    @pytest.mark.parametrize("d", [2, 3, 5, 7, 11, 13])
    def test_prime_sets_are_complete(self, d: int) -> None:
        mubs = prime_d_mubs(d)
        assert len(mubs) == d + 1
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                assert np.allclose(mubs[i].overlaps(mubs[j]), 1 / d, atol=1e-9)

    def test_prime_set_starts_with_computational_then_fourier(self) -> None:
        mubs = prime_d_mubs(5)
        assert mubs[0].allclose(computational_basis(5))
        assert mubs[1].allclose(fourier_basis(5))

    def test_qubit_order_is_z_x_y(self) -> None:
        z, x, y = qubit_pauli_mubs()
        assert np.allclose(bloch_vector(z), [0, 0, 1])
        assert np.allclose(bloch_vector(x), [1, 0, 0])
        assert np.allclose(bloch_vector(y), [0, 1, 0])

    @pytest.mark.parametrize("d", [4, 6, 8, 9, 10, 12, 14, 15, 16])
    def test_non_prime_full_sets_unsupported(self, d: int) -> None:
        with pytest.raises(UnsupportedDimensionError):
            prime_d_mubs(d)
        with pytest.raises(UnsupportedDimensionError):
            mub_set(d, 3)

    def test_mub_set_counts(self) -> None:
        assert len(mub_set(4, 2)) == 2
        assert len(mub_set(3, 4)) == 4
        with pytest.raises(UnsupportedDimensionError):
            mub_set(3, 5)

    def test_non_complementary_pair_rejected(self) -> None:
        with pytest.raises(ContractViolationError):
            MubPair(computational_basis(2), computational_basis(2))
        with pytest.raises(ContractViolationError):
            MubSet([computational_basis(3)])

    def test_pair_and_take(self) -> None:
        mubs = qubit_pauli_mubs()
        assert mubs.pair(1, 2).first.allclose(mubs[1])
        assert len(mubs.take(2)) == 2


class TestObservables:
    def test_linear_observable_matrix(self) -> None:
        obs = linear_observable(computational_basis(3))
        assert np.allclose(obs.matrix, np.diag([0, 1, 2]))

    def test_degenerate_eigenvalues_rejected(self) -> None:
        with pytest.raises(ContractViolationError):
            Observable(computational_basis(2), (1.0, 1.0))
        with pytest.raises(ContractViolationError):
            Observable(computational_basis(2), (1.0, 2.0, 3.0))


class TestQubitHelpers:
    def test_haar_unitary_is_unitary_and_reproducible(self) -> None:
        u1 = haar_unitary(4, RngStream(3))
        u2 = haar_unitary(4, RngStream(3))
        assert is_unitary(u1, 1e-12)
        assert np.array_equal(u1, u2)

    def test_rotate_basis_rejects_non_unitary(self) -> None:
        with pytest.raises(ContractViolationError):
            rotate_basis(computational_basis(2), np.diag([1, 2]))

    def test_rotation_about_x(self) -> None:
        u = qubit_rotation(np.pi, 0.0)
        assert np.allclose(u, -1j * PAULI_X)

    @pytest.mark.parametrize("phi", [0.0, 0.4, np.pi / 2, 2.5])
    def test_equatorial_bases_are_complementary_to_z(self, phi: float) -> None:
        b = equatorial_basis(phi)
        MubPair(computational_basis(2), b)
        assert np.allclose(bloch_vector(b), [np.cos(phi), np.sin(phi), 0.0])

    @pytest.mark.parametrize("direction", [(0, 0, 1), (1, 1, 0), (0.3, -0.2, -0.9)])
    def test_basis_from_bloch_round_trips(self, direction: tuple[float, float, float]) -> None:
        n = np.asarray(direction, dtype=float)
        assert np.allclose(bloch_vector(qubit_basis_from_bloch(n)), n / np.linalg.norm(n))

    def test_conjugate_basis_of_y_flips_y(self) -> None:
        y = qubit_pauli_mubs()[2]
        assert np.allclose(bloch_vector(conjugate_basis(y)), [0, -1, 0])

    def test_bloch_vector_needs_qubit(self) -> None:
        with pytest.raises(UnsupportedDimensionError):
            bloch_vector(computational_basis(3))

    def test_pauli_constants(self) -> None:
        assert np.allclose(PAULI_X @ PAULI_Y, 1j * PAULI_Z)

# 🧪🧭
