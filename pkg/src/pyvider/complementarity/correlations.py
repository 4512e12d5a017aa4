#
# correlations.py
#
"""
Outcome statistics of local measurements and the three correlation measures:
mutual information I, Pearson coefficient C and the conditional-probability
sum S.
"""

from collections.abc import Sequence
from itertools import permutations
from typing import Any

from attrs import define, field
import numpy as np

from pyvider.complementarity.bases import MubSet, Observable, OrthonormalBasis
from pyvider.complementarity.errors import (
    ContractViolationError,
    DegenerateObservableError,
    DimensionMismatchError,
    UndefinedConditionalError,
    UnsupportedDimensionError,
)
from pyvider.complementarity.logger import logger
from pyvider.complementarity.qmat import BipartiteState, DensityMatrix, RealVector
from pyvider.complementarity.types import PROBABILITY_FLOOR

_NEGATIVE_TOL = 1e-12
_SUM_TOL = 1e-9
# Rounding residue from ⟨v|ρ|v⟩ on exact zeros.
_NOISE_FLOOR = 1e-15
_MIN_STD = 1e-12
_MAX_PAIRING_DIM = 5


def _clean_table(table: Any) -> RealVector:
    arr = np.array(np.real(table), dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ContractViolationError(f"joint table must be square, got shape {arr.shape}")
    if np.any(arr < -_NEGATIVE_TOL):
        raise ContractViolationError(f"joint table has negative entries (min {arr.min():.3e})")
    arr[np.abs(arr) < _NOISE_FLOOR] = 0.0
    arr = np.clip(arr, 0.0, None)
    arr.setflags(write=False)
    return arr


@define(frozen=True, slots=True, eq=False)
class JointDistribution:
    """d×d table p(a_i, b_j)."""
    table: RealVector = field(converter=_clean_table)

    def __attrs_post_init__(self) -> None:
        total = float(self.table.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ContractViolationError(f"joint table sums to {total:.12g}, expected 1")

    @property
    def dim(self) -> int:
        return int(self.table.shape[0])

    @property
    def marginal_a(self) -> RealVector:
        return self.table.sum(axis=1)

    @property
    def marginal_b(self) -> RealVector:
        return self.table.sum(axis=0)

    def transpose(self) -> "JointDistribution":
        return JointDistribution(self.table.T)


def joint_distribution(s: BipartiteState, basis_a: OrthonormalBasis, basis_b: OrthonormalBasis) -> JointDistribution:
    """p(a_i, b_j) = ⟨a_i b_j|ρ|a_i b_j⟩."""
    if basis_a.dim != s.dA or basis_b.dim != s.dB:
        raise DimensionMismatchError(
            f"bases of dimension ({basis_a.dim}, {basis_b.dim}) cannot measure a ({s.dA}, {s.dB}) state"
        )
    v = np.kron(basis_a.vectors, basis_b.vectors)
    probs = np.real(np.einsum("ki,kl,li->i", v.conj(), s.matrix, v))
    return JointDistribution(probs.reshape(s.dA, s.dB))


def shannon_entropy(probs: Any) -> float:
    """Entropy in bits with 0·log 0 = 0."""
    p = np.asarray(probs, dtype=np.float64).ravel()
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p))) if p.size else 0.0


def mutual_information(j: JointDistribution) -> float:
    """H(A) + H(B) − H(A,B), in bits."""
    value = shannon_entropy(j.marginal_a) + shannon_entropy(j.marginal_b) - shannon_entropy(j.table)
    return max(value, 0.0)


def conditional_entropy(j: JointDistribution) -> float:
    """H(A|B) = H(A,B) − H(B)."""
    return shannon_entropy(j.table) - shannon_entropy(j.marginal_b)


def conditional(j: JointDistribution, a: int, b: int) -> float:
    """p(a|b)."""
    p_b = float(j.marginal_b[b])
    if p_b <= PROBABILITY_FLOOR:
        raise UndefinedConditionalError(f"cannot condition on outcome b={b} with probability {p_b:.3e}")
    return float(j.table[a, b]) / p_b


def conditioned_state(s: BipartiteState, basis_b: OrthonormalBasis, b: int) -> DensityMatrix:
    """State of A after outcome b on B: ⟨b|ρ|b⟩_B / p(b)."""
    if basis_b.dim != s.dB:
        raise DimensionMismatchError(f"basis of dimension {basis_b.dim} cannot measure subsystem B of dimension {s.dB}")
    v = basis_b.vector(b)
    t = s.matrix.reshape(s.dA, s.dB, s.dA, s.dB)
    unnormalized = np.einsum("ijkl,j,l->ik", t, v.conj(), v)
    p_b = float(np.real(np.trace(unnormalized)))
    if p_b <= PROBABILITY_FLOOR:
        raise UndefinedConditionalError(f"outcome b={b} has probability {p_b:.3e}")
    sigma = unnormalized / p_b
    return DensityMatrix((sigma + sigma.conj().T) / 2.0)


def conditional_sum(j: JointDistribution, pairing: Sequence[int] | None = None) -> float:
    """S = Σ_i p(a_{π(i)} | b_i); identity pairing by default."""
    d = j.dim
    perm = tuple(range(d)) if pairing is None else tuple(int(i) for i in pairing)
    if sorted(perm) != list(range(d)):
        raise ContractViolationError(f"pairing {perm} is not a permutation of 0..{d - 1}")
    return sum(conditional(j, perm[i], i) for i in range(d))


def max_conditional_sum(j: JointDistribution) -> tuple[float, tuple[int, ...]]:
    """Largest S over all d! outcome pairings. Exhaustive, so limited to d ≤ 5."""
    if j.dim > _MAX_PAIRING_DIM:
        raise UnsupportedDimensionError(f"pairing optimisation is limited to d <= {_MAX_PAIRING_DIM}, got {j.dim}")
    p_b = j.marginal_b
    if np.any(p_b <= PROBABILITY_FLOOR):
        raise UndefinedConditionalError("a marginal outcome of B has zero probability")
    cond = j.table / p_b[None, :]
    best_value, best_perm = -1.0, tuple(range(j.dim))
    for perm in permutations(range(j.dim)):
        value = float(sum(cond[perm[i], i] for i in range(j.dim)))
        if value > best_value + 1e-15:
            best_value, best_perm = value, perm
    return best_value, best_perm


def _table_moments(j: JointDistribution, values_a: RealVector, values_b: RealVector) -> tuple[float, float, float]:
    mean_a = float(j.marginal_a @ values_a)
    mean_b = float(j.marginal_b @ values_b)
    var_a = float(j.marginal_a @ (values_a - mean_a) ** 2)
    var_b = float(j.marginal_b @ (values_b - mean_b) ** 2)
    cov = float((values_a - mean_a) @ j.table @ (values_b - mean_b))
    return var_a, var_b, cov


def pearson_from_table(j: JointDistribution, values_a: Sequence[float], values_b: Sequence[float]) -> float:
    """Classical Pearson coefficient of outcomes labelled by the given values."""
    va = np.asarray(values_a, dtype=np.float64)
    vb = np.asarray(values_b, dtype=np.float64)
    var_a, var_b, cov = _table_moments(j, va, vb)
    std_a, std_b = np.sqrt(var_a), np.sqrt(var_b)
    if std_a <= _MIN_STD or std_b <= _MIN_STD:
        raise DegenerateObservableError(
            f"zero variance (σ_A={std_a:.3e}, σ_B={std_b:.3e}): the state is an eigenstate of the observable"
        )
    return float(np.clip(cov / (std_a * std_b), -1.0, 1.0))


def pearson(s: BipartiteState, obs_a: Observable, obs_b: Observable) -> complex:
    """
    (⟨A⊗B⟩ − ⟨A⟩⟨B⟩)/(σ_A σ_B) for local observables.

    Kept complex-typed; for the local Hermitian observables used here the
    imaginary part is exactly zero.
    """
    j = joint_distribution(s, obs_a.basis, obs_b.basis)
    return complex(pearson_from_table(j, obs_a.values, obs_b.values), 0.0)


def local_entropies(rho: DensityMatrix, mubs: MubSet) -> tuple[float, ...]:
    """Outcome entropy of a single-system state in each basis of the set."""
    if rho.dim != mubs.dim:
        raise DimensionMismatchError(f"state dimension {rho.dim} does not match MUB dimension {mubs.dim}")
    entropies = []
    for basis in mubs:
        probs = np.real(np.einsum("ki,kl,li->i", basis.vectors.conj(), rho.matrix, basis.vectors))
        entropies.append(shannon_entropy(np.clip(probs, 0.0, None)))
    return tuple(entropies)


@define(frozen=True, slots=True)
class PairCorrelations:
    """Correlations of one basis pair; C and S are None when undefined."""
    index: int
    I: float  # noqa: E741
    C: complex | None
    abs_C: float | None
    S: float | None
    H_A: float
    H_B: float
    var_A: float
    var_B: float


@define(frozen=True, slots=True)
class CorrelationReport:
    d: int
    pairs: tuple[PairCorrelations, ...] = field(converter=tuple)

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def _first(self, n: int | None) -> tuple[PairCorrelations, ...]:
        count = self.n_pairs if n is None else n
        if not 1 <= count <= self.n_pairs:
            raise ContractViolationError(f"requested {count} basis pairs from a report with {self.n_pairs}")
        return self.pairs[:count]

    @property
    def i_values(self) -> tuple[float, ...]:
        return tuple(p.I for p in self.pairs)

    def i_sum(self, n: int | None = None) -> float:
        return float(sum(p.I for p in self._first(n)))

    def top_two_i(self) -> tuple[float, float]:
        """Largest and second largest I over all pairs."""
        ordered = sorted(self.i_values, reverse=True)
        return ordered[0], ordered[1]

    def c_sum(self, n: int | None = None) -> float | None:
        values = [p.abs_C for p in self._first(n)]
        return None if any(v is None for v in values) else float(sum(v for v in values if v is not None))

    def c_product(self) -> float | None:
        first, second = self._first(2)
        if first.abs_C is None or second.abs_C is None:
            return None
        return first.abs_C * second.abs_C

    def s_sum(self, n: int = 2) -> float | None:
        values = [p.S for p in self._first(n)]
        return None if any(v is None for v in values) else float(sum(v for v in values if v is not None))


def _variance(marginal: RealVector, values: RealVector) -> float:
    mean = float(marginal @ values)
    return float(marginal @ (values - mean) ** 2)


def full_report(
    s: BipartiteState,
    mubs: MubSet,
    mubs_b: MubSet | None = None,
    *,
    optimize_pairing: bool = False,
) -> CorrelationReport:
    """
    I, C and S for every basis pair k, measuring basis k of `mubs` on A and
    basis k of `mubs_b` (default: the same set) on B, with linear observables.
    """
    side_b = mubs if mubs_b is None else mubs_b
    if len(side_b) != len(mubs):
        raise DimensionMismatchError(f"MUB sets of sizes {len(mubs)} and {len(side_b)} cannot be paired")
    if mubs.dim != s.dA or side_b.dim != s.dB:
        raise DimensionMismatchError(f"MUB dimension {mubs.dim} does not match subsystem dimension {s.dA}")
    values = np.arange(s.dA, dtype=np.float64)
    pairs = []
    for k, (basis_a, basis_b) in enumerate(zip(mubs, side_b, strict=True)):
        j = joint_distribution(s, basis_a, basis_b)
        try:
            c: complex | None = complex(pearson_from_table(j, values, values))
        except DegenerateObservableError:
            c = None
        try:
            s_value: float | None = max_conditional_sum(j)[0] if optimize_pairing else conditional_sum(j)
        except UndefinedConditionalError:
            s_value = None
        pairs.append(PairCorrelations(
            index=k,
            I=mutual_information(j),
            C=c,
            abs_C=None if c is None else abs(c),
            S=s_value,
            H_A=shannon_entropy(j.marginal_a),
            H_B=shannon_entropy(j.marginal_b),
            var_A=_variance(j.marginal_a, values),
            var_B=_variance(j.marginal_b, values),
        ))
    logger.get_logger(__name__).debug("correlation report built", domain="correlation", action="measure", status="complete",
        d=s.dA, n_pairs=len(pairs))
    return CorrelationReport(d=s.dA, pairs=tuple(pairs))

# 🔗📏
