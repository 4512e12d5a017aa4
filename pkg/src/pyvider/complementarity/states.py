#
# states.py
#
"""
Named states, parametric families and random density-matrix sampling.
"""

from collections.abc import Callable, Sequence

from attrs import define, field
import numpy as np

from pyvider.complementarity.bases import (
    OrthonormalBasis,
    computational_basis,
    fourier_basis,
    haar_unitaries,
)
from pyvider.complementarity.errors import (
    DimensionMismatchError,
    ParameterRangeError,
    UnknownNameError,
    UnsupportedDimensionError,
)
from pyvider.complementarity.qmat import (
    BipartiteState,
    ComplexMatrix,
    DensityMatrix,
    check_subsystem_dim,
    projector,
)
from pyvider.complementarity.rng import RngLike, RngStream, as_generator

__all__ = [
    "CATALOG",
    "FAMILIES",
    "RngStream",
    "StateFamily",
    "bell_state",
    "classical_quantum",
    "get_family",
    "named_state",
    "phi_minus",
    "phi_plus",
    "product_state",
    "psi_epsilon",
    "psi_minus",
    "psi_plus",
    "random_density_matrices",
    "random_density_matrix",
    "random_pure_state",
    "rho_cc",
    "separable_mixture",
    "werner",
]

DEFAULT_MIXTURE_COMPONENTS = 4


def _check_unit_interval(name: str, value: float) -> float:
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise ParameterRangeError(f"{name} must lie in [0, 1], got {value!r}")
    return v


def _sym(m: ComplexMatrix) -> ComplexMatrix:
    return (m + m.conj().T) / 2.0


def _product_ket(u: ComplexMatrix, v: ComplexMatrix) -> ComplexMatrix:
    return np.kron(u, v)


def bell_state(name: str) -> ComplexMatrix:
    """State vector of a two-qubit Bell state: phi_plus, phi_minus, psi_plus, psi_minus."""
    s = 1.0 / np.sqrt(2.0)
    vectors = {
        "phi_plus": np.array([s, 0, 0, s]),
        "phi_minus": np.array([s, 0, 0, -s]),
        "psi_plus": np.array([0, s, s, 0]),
        "psi_minus": np.array([0, s, -s, 0]),
    }
    if name not in vectors:
        raise UnknownNameError(f"unknown Bell state '{name}'")
    return vectors[name].astype(np.complex128)


def phi_plus(d: int = 2) -> BipartiteState:
    """Maximally entangled Σ_i |ii⟩/√d."""
    d = check_subsystem_dim(d)
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[[i * d + i for i in range(d)]] = 1.0 / np.sqrt(d)
    return BipartiteState.from_pure(psi, d)


def phi_minus() -> BipartiteState:
    return BipartiteState.from_pure(bell_state("phi_minus"), 2)


def psi_plus() -> BipartiteState:
    return BipartiteState.from_pure(bell_state("psi_plus"), 2)


def psi_minus() -> BipartiteState:
    return BipartiteState.from_pure(bell_state("psi_minus"), 2)


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> BipartiteState:
    if rho_a.dim != rho_b.dim:
        raise DimensionMismatchError(f"local dimensions {rho_a.dim} and {rho_b.dim} differ")
    return BipartiteState(rho_a.dim, rho_b.dim, DensityMatrix(np.kron(rho_a.matrix, rho_b.matrix)))


def rho_cc(basis_a: OrthonormalBasis, basis_b: OrthonormalBasis) -> BipartiteState:
    """Σ_i |a_i⟩⟨a_i| ⊗ |b_i⟩⟨b_i| / d: classically correlated, zero discord."""
    if basis_a.dim != basis_b.dim:
        raise DimensionMismatchError(f"basis dimensions {basis_a.dim} and {basis_b.dim} differ")
    d = basis_a.dim
    m = sum(projector(_product_ket(basis_a.vector(i), basis_b.vector(i))) for i in range(d)) / d
    return BipartiteState(d, d, DensityMatrix(_sym(m)))


def psi_epsilon(epsilon: float) -> BipartiteState:
    """ε|00⟩ + √(1−ε²)|11⟩."""
    eps = _check_unit_interval("epsilon", epsilon)
    return BipartiteState.from_pure(np.array([eps, 0.0, 0.0, np.sqrt(1.0 - eps * eps)]), 2)


def werner(p: float) -> BipartiteState:
    """p|Φ⁺⟩⟨Φ⁺| + (1−p)I/4; entangled iff p > 1/3."""
    p = _check_unit_interval("p", p)
    m = p * projector(bell_state("phi_plus")) + (1.0 - p) * np.eye(4) / 4.0
    return BipartiteState(2, 2, DensityMatrix(m))


def _corner_state(p: float) -> BipartiteState:
    p = _check_unit_interval("p", p)
    zero, plus = computational_basis(2).vector(0), fourier_basis(2).vector(0)
    m = p * projector(np.kron(zero, zero)) + (1.0 - p) * projector(np.kron(plus, plus))
    return BipartiteState(2, 2, DensityMatrix(_sym(m)))


def _dotted_state(p: float) -> BipartiteState:
    """p·ρ_cc(σ_z) + (1−p)·ρ_cc(σ_x): separable, on the Pearson and upper S boundaries for every p."""
    p = _check_unit_interval("p", p)
    z, x = computational_basis(2), fourier_basis(2)
    m = p * rho_cc(z, z).matrix + (1.0 - p) * rho_cc(x, x).matrix
    return BipartiteState(2, 2, DensityMatrix(m))


def _solid_state(p: float) -> BipartiteState:
    """p|Φ⁺⟩⟨Φ⁺| + (1−p)|Φ⁻⟩⟨Φ⁻|; entangled iff p ≠ 1/2."""
    p = _check_unit_interval("p", p)
    m = p * projector(bell_state("phi_plus")) + (1.0 - p) * projector(bell_state("phi_minus"))
    return BipartiteState(2, 2, DensityMatrix(_sym(m)))


@define(frozen=True, slots=True)
class StateFamily:
    """A one-parameter family of two-qubit states, p ∈ parameter_range."""
    name: str
    generator: Callable[[float], BipartiteState] = field(repr=False)
    description: str = ""
    parameter_range: tuple[float, float] = (0.0, 1.0)

    def __call__(self, p: float) -> BipartiteState:
        lo, hi = self.parameter_range
        if not lo <= float(p) <= hi:
            raise ParameterRangeError(f"family '{self.name}' parameter must lie in [{lo}, {hi}], got {p!r}")
        return self.generator(float(p))


FAMILIES: dict[str, StateFamily] = {
    family.name: family for family in (
        StateFamily("werner", werner, "p|Φ⁺⟩⟨Φ⁺| + (1−p)I/4"),
        StateFamily("psi_epsilon", psi_epsilon, "p|00⟩ + √(1−p²)|11⟩"),
        StateFamily("dotted", _dotted_state, "p·ρ_cc(z) + (1−p)·ρ_cc(x)"),
        StateFamily("solid", _solid_state, "p|Φ⁺⟩⟨Φ⁺| + (1−p)|Φ⁻⟩⟨Φ⁻|"),
        StateFamily("corner", _corner_state, "p|00⟩⟨00| + (1−p)|++⟩⟨++|"),
    )
}


def get_family(name: str) -> StateFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownNameError(f"unknown family '{name}'; choose from {', '.join(sorted(FAMILIES))}") from None


def _product_bound(d: int) -> BipartiteState:
    """Σ_i (|a_i a_i⟩⟨a_i a_i| + |c_i c_i⟩⟨c_i c_i|)/2d for computational a and Fourier c."""
    a, c = computational_basis(d), fourier_basis(d)
    m = (rho_cc(a, a).matrix + rho_cc(c, c).matrix) / 2.0
    return BipartiteState(d, d, DensityMatrix(m))


def _shifted_cc(d: int) -> BipartiteState:
    """Σ_i |a_i b_{i⊕1}⟩⟨a_i b_{i⊕1}|/d."""
    a = computational_basis(d)
    shifted = OrthonormalBasis(np.roll(np.eye(d, dtype=np.complex128), 1, axis=0))
    return rho_cc(a, shifted)


def _rho_cc_computational(d: int) -> BipartiteState:
    a = computational_basis(d)
    return rho_cc(a, a)


def _qubit_only(builder: Callable[[], BipartiteState]) -> Callable[[int], BipartiteState]:
    def build(d: int) -> BipartiteState:
        if d != 2:
            raise UnsupportedDimensionError(f"this catalog state is defined for qubits only, got d={d}")
        return builder()
    return build


_CATALOG_BUILDERS: dict[str, Callable[[int], BipartiteState]] = {
    "qq_four_corner": _product_bound,
    "two_corner": _qubit_only(lambda: _corner_state(0.5)),
    "product_bound": _product_bound,
    "shifted_cc": _shifted_cc,
    "rho_cc": _rho_cc_computational,
    "phi_plus": phi_plus,
    "phi_minus": _qubit_only(phi_minus),
    "psi_plus": _qubit_only(psi_plus),
    "psi_minus": _qubit_only(psi_minus),
}

CATALOG: tuple[str, ...] = tuple(_CATALOG_BUILDERS)
ENTANGLED_CATALOG: frozenset[str] = frozenset({"phi_plus", "phi_minus", "psi_plus", "psi_minus"})


def named_state(name: str, d: int = 2) -> BipartiteState:
    """Catalog lookup; `d` applies to the dimension-generic entries."""
    try:
        builder = _CATALOG_BUILDERS[name]
    except KeyError:
        raise UnknownNameError(f"unknown state '{name}'; choose from {', '.join(CATALOG)}") from None
    return builder(check_subsystem_dim(d))


def classical_quantum(weights: Sequence[float], basis: OrthonormalBasis, states: Sequence[DensityMatrix]) -> BipartiteState:
    """Σ_i p_i |a_i⟩⟨a_i| ⊗ ρ_i. Classical on A; quantum on B when the ρ_i are not orthogonal."""
    w = np.asarray(weights, dtype=np.float64)
    d = basis.dim
    if w.shape != (d,) or len(states) != d:
        raise DimensionMismatchError(f"need {d} weights and {d} conditional states")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise ParameterRangeError("weights must be a probability vector")
    m = sum(wi * np.kron(projector(basis.vector(i)), rho.matrix) for i, (wi, rho) in enumerate(zip(w, states, strict=True)))
    return BipartiteState(d, d, DensityMatrix(_sym(m)))


def _ginibre(gen: np.random.Generator, shape: tuple[int, ...]) -> ComplexMatrix:
    return (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / np.sqrt(2.0)


def random_density_matrices(d_total: int, count: int, rng: RngLike) -> ComplexMatrix:
    """
    `count` random states ρ = U diag(λ) U†, shape (count, d_total, d_total).

    U is Haar-distributed and the spectrum λ is uniform on the probability
    simplex (Dirichlet(1, ..., 1)). About 36.9% of two-qubit draws are entangled.
    """
    if d_total < 2:
        raise DimensionMismatchError(f"d_total must be at least 2, got {d_total}")
    gen = as_generator(rng)
    u = haar_unitaries(d_total, count, gen)
    spectra = gen.dirichlet(np.ones(d_total), size=count)
    rho = np.einsum("nij,nj,nkj->nik", u, spectra, np.conj(u))
    return (rho + np.conj(np.swapaxes(rho, -1, -2))) / 2.0


def random_density_matrix(d_total: int, rng: RngLike) -> DensityMatrix:
    return DensityMatrix(random_density_matrices(d_total, 1, rng)[0])


def random_pure_state(d: int, rng: RngLike) -> ComplexMatrix:
    v = _ginibre(as_generator(rng), (d,))
    return v / np.linalg.norm(v)


def separable_mixture(rng: RngLike, k: int = DEFAULT_MIXTURE_COMPONENTS, d: int = 2) -> BipartiteState:
    """Convex mixture of k random product states with Dirichlet(1, ..., 1) weights."""
    if k < 1:
        raise ParameterRangeError(f"k must be at least 1, got {k}")
    d = check_subsystem_dim(d)
    gen = as_generator(rng)
    weights = gen.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    local_a = random_density_matrices(d, k, gen)
    local_b = random_density_matrices(d, k, gen)
    m = np.einsum("l,lij,lkm->ikjm", weights, local_a, local_b).reshape(d * d, d * d)
    return BipartiteState(d, d, DensityMatrix(_sym(m)))

# ⚛️✨
