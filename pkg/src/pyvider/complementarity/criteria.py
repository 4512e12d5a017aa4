#
# criteria.py
#
"""
Entanglement detectors and the PPT ground-truth oracle.

Every detector returns a `Verdict`. Margins are `value − threshold` (two-sided
tests take the larger excess) and are snapped to exactly 0.0 within the
detection slack, so states sitting on a boundary are never flagged and
`detected_entangled ⇔ margin > 0` holds exactly.
"""

from collections.abc import Callable, Sequence

from attrs import define, field
import numpy as np

from pyvider.complementarity.bases import (
    MubPair,
    MubSet,
    OrthonormalBasis,
    computational_basis,
    conjugate_basis,
    fourier_basis,
    rotate_basis,
)
from pyvider.complementarity.correlations import (
    CorrelationReport,
    conditional,
    full_report,
    joint_distribution,
    mutual_information,
)
from pyvider.complementarity.errors import (
    ContractViolationError,
    DegenerateObservableError,
    UndefinedConditionalError,
    UnknownNameError,
    UnsupportedDimensionError,
)
from pyvider.complementarity.qmat import (
    IDENTITY2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    BipartiteState,
    ComplexMatrix,
    expectation,
    min_partial_transpose_eigenvalue,
    partial_trace,
)
from pyvider.complementarity.types import DETECTION_SLACK, PPT_SLACK

MAX_ENTANGLEMENT_TOL = 1e-6
PEARSON_PRODUCT_THRESHOLD = 0.25


@define(frozen=True, slots=True)
class Verdict:
    detector: str
    detected_entangled: bool
    margin: float
    threshold: float
    value: float | None = None
    undefined: bool = False

    def __attrs_post_init__(self) -> None:
        if self.detected_entangled != (self.margin > 0):
            raise ContractViolationError(
                f"verdict for '{self.detector}' is inconsistent: detected={self.detected_entangled}, margin={self.margin}"
            )

    @classmethod
    def from_value(
        cls,
        detector: str,
        value: float,
        threshold: float,
        *,
        lower: float | None = None,
        slack: float = DETECTION_SLACK,
    ) -> "Verdict":
        raw = value - threshold
        if lower is not None:
            raw = max(raw, lower - value)
        margin = 0.0 if abs(raw) <= slack else float(raw)
        return cls(detector, margin > 0, margin, float(threshold), float(value))

    @classmethod
    def undetermined(cls, detector: str, threshold: float) -> "Verdict":
        """A criterion whose statistic is undefined for this state: never detects."""
        return cls(detector, False, 0.0, float(threshold), None, True)


@define(frozen=True, slots=True, eq=False)
class WitnessOperator:
    label: str
    matrix: ComplexMatrix = field(repr=False)

    def value(self, s: BipartiteState) -> float:
        """Tr[W ρ]."""
        return float(np.real(expectation(s, self.matrix)))


def _pauli_witness(label: str, cx: int, cy: int, cz: int) -> WitnessOperator:
    m = (np.kron(IDENTITY2, IDENTITY2) + cx * np.kron(PAULI_X, PAULI_X)
         + cy * np.kron(PAULI_Y, PAULI_Y) + cz * np.kron(PAULI_Z, PAULI_Z)) / 4.0
    m.setflags(write=False)
    return WitnessOperator(label, m)


# Signs of (σ_xσ_x, σ_yσ_y, σ_zσ_z). W1, W2, W4 reach −1/2 on Ψ⁻, Ψ⁺, Φ⁻;
# W3 and W5 are positive semidefinite and never fire. No member detects Φ⁺
# or any Werner state.
WITNESS_COEFFICIENTS: tuple[tuple[int, int, int], ...] = (
    (1, 1, 1), (-1, -1, 1), (1, -1, 1), (1, -1, -1), (-1, -1, -1),
)

_WITNESSES: tuple[WitnessOperator, ...] = tuple(
    _pauli_witness(f"W{i + 1}", *signs) for i, signs in enumerate(WITNESS_COEFFICIENTS)
)

# Optimal for Φ⁺; Tr[W ρ_Werner(p)] = (1 − 3p)/4. Kept out of the bank above.
PHI_PLUS_WITNESS_COEFFICIENTS: tuple[int, int, int] = (-1, 1, -1)
PHI_PLUS_WITNESS: WitnessOperator = _pauli_witness("W_phi_plus", *PHI_PLUS_WITNESS_COEFFICIENTS)


def witness_matrices() -> tuple[WitnessOperator, ...]:
    return _WITNESSES


def _require_qubits(s: BipartiteState, what: str) -> None:
    if s.dA != 2 or s.dB != 2:
        raise UnsupportedDimensionError(f"{what} is defined for two qubits, got d={s.dA}")


def ppt_oracle(s: BipartiteState) -> Verdict:
    """Entangled iff the partial transpose has an eigenvalue below −1e−10; exact for 2×2."""
    min_eig = min_partial_transpose_eigenvalue(s)
    return Verdict.from_value("ppt", -min_eig, 0.0, slack=PPT_SLACK)


def mi_criterion(report: CorrelationReport, d: int | None = None) -> Verdict:
    """Largest plus second-largest I above log₂d."""
    if report.n_pairs < 2:
        raise ContractViolationError("the mutual-information criterion needs at least two basis pairs")
    dim = report.d if d is None else d
    first, second = report.top_two_i()
    return Verdict.from_value("mi", first + second, float(np.log2(dim)))


def mi3_criterion(report: CorrelationReport) -> Verdict:
    """I over three qubit MUB pairs above 1."""
    if report.d != 2:
        raise UnsupportedDimensionError(f"the three-basis mutual-information bound holds for qubits, got d={report.d}")
    if report.n_pairs < 3:
        raise ContractViolationError("the three-basis criterion needs three basis pairs")
    return Verdict.from_value("mi3", report.i_sum(3), 1.0)


def pearson_criterion(report: CorrelationReport, n_mubs: int = 2) -> Verdict:
    """Σ|C| over the first n_mubs pairs above 1."""
    if n_mubs not in (2, 3):
        raise ContractViolationError(f"n_mubs must be 2 or 3, got {n_mubs}")
    total = report.c_sum(n_mubs)
    if total is None:
        raise DegenerateObservableError("a measured observable has zero variance on this state")
    return Verdict.from_value(f"pearson{n_mubs}", total, 1.0)


def pearson_product_criterion(report: CorrelationReport) -> Verdict:
    """|C_AB · C_CD| above 1/4."""
    product = report.c_product()
    if product is None:
        raise DegenerateObservableError("a measured observable has zero variance on this state")
    return Verdict.from_value("pearson_product", product, PEARSON_PRODUCT_THRESHOLD)


def condprob_criterion(report: CorrelationReport, d: int | None = None) -> Verdict:
    """S_AB + S_CD outside [1, d+1]. Undefined S gives a not-detected, undefined verdict."""
    dim = report.d if d is None else d
    total = report.s_sum(2)
    if total is None:
        return Verdict.undetermined("condprob", dim + 1.0)
    return Verdict.from_value("condprob", total, dim + 1.0, lower=1.0)


def witness_bank(s: BipartiteState) -> list[Verdict]:
    """One verdict per witness; value is −Tr[ρW]."""
    _require_qubits(s, "the witness bank")
    return [Verdict.from_value(w.label, -w.value(s), 0.0) for w in _WITNESSES]


def aggregate_witness_verdict(verdicts: Sequence[Verdict]) -> Verdict:
    """Detected if any witness detects; margin and value are the best individual ones."""
    best = max(verdicts, key=lambda v: v.margin)
    return Verdict("witness", best.detected_entangled, best.margin, 0.0, best.value)


def phi_plus_witness_verdict(s: BipartiteState) -> Verdict:
    _require_qubits(s, "the Φ⁺ witness")
    return Verdict.from_value("witness_phi_plus", -PHI_PLUS_WITNESS.value(s), 0.0)


def _local_expectation(rho: ComplexMatrix, op: ComplexMatrix) -> float:
    return float(np.real(np.trace(rho @ op)))


def lur_criterion(s: BipartiteState) -> Verdict:
    """
    |C′_XX| + |C′_ZZ| above (Δ²σ_x(ρ₁) + Δ²σ_x(ρ₂) + Δ²σ_z(ρ₁) + Δ²σ_z(ρ₂))/2 − 1,
    with C′ the unnormalised covariance of ±1-valued Pauli observables.
    """
    _require_qubits(s, "the LUR criterion")
    rho1 = partial_trace(s, "A").matrix
    rho2 = partial_trace(s, "B").matrix
    total = 0.0
    variances = 0.0
    for pauli in (PAULI_X, PAULI_Z):
        mean1 = _local_expectation(rho1, pauli)
        mean2 = _local_expectation(rho2, pauli)
        joint = float(np.real(expectation(s, np.kron(pauli, pauli))))
        total += abs(joint - mean1 * mean2)
        variances += (1.0 - mean1 ** 2) + (1.0 - mean2 ** 2)
    return Verdict.from_value("lur", total, variances / 2.0 - 1.0)


def adapted_bases(u: ComplexMatrix, u_prime: ComplexMatrix) -> tuple[MubPair, MubPair]:
    """
    Complementary pairs on each side that make (U⊗U′)|Φ⁺⟩ perfectly correlated:
    U applied to computational/Fourier on A, U′ applied to their conjugates on B.
    """
    d = u.shape[0]
    comp, four = computational_basis(d), fourier_basis(d)
    side_a = MubPair(rotate_basis(comp, u), rotate_basis(four, u))
    side_b = MubPair(rotate_basis(conjugate_basis(comp), u_prime), rotate_basis(conjugate_basis(four), u_prime))
    return side_a, side_b


def max_entanglement_test(s: BipartiteState, adapted_a: MubPair, adapted_b: MubPair) -> bool:
    """True iff I_AB + I_CD reaches 2·log₂d (within 1e−6) with the supplied per-side bases."""
    total = sum(
        mutual_information(joint_distribution(s, basis_a, basis_b))
        for basis_a, basis_b in ((adapted_a.first, adapted_b.first), (adapted_a.second, adapted_b.second))
    )
    return abs(total - 2.0 * np.log2(s.dA)) <= MAX_ENTANGLEMENT_TOL


@define(frozen=True, slots=True)
class ClassificationCheck:
    """Conditionals p(x_i|x_i) in both bases of a complementary pair, measured on both sides."""
    conditionals_first: tuple[float, ...]
    conditionals_second: tuple[float, ...]
    s_first: float
    s_second: float
    maximal_first: bool
    uniform_second: bool

    @property
    def consistent(self) -> bool:
        """Maximal correlation in one basis forces uniform conditionals in the other."""
        return (not self.maximal_first) or self.uniform_second


def _diagonal_conditionals(s: BipartiteState, basis: OrthonormalBasis) -> tuple[float, ...]:
    j = joint_distribution(s, basis, basis)
    out = []
    for i in range(basis.dim):
        try:
            out.append(conditional(j, i, i))
        except UndefinedConditionalError:
            out.append(float("nan"))
    return tuple(out)


def cc_cq_classification_check(s: BipartiteState, mub: MubPair, tol: float = 1e-9) -> ClassificationCheck:
    first = _diagonal_conditionals(s, mub.first)
    second = _diagonal_conditionals(s, mub.second)
    d = s.dA
    return ClassificationCheck(
        conditionals_first=first,
        conditionals_second=second,
        s_first=float(np.nansum(first)),
        s_second=float(np.nansum(second)),
        maximal_first=bool(all(abs(c - 1.0) <= tol for c in first)),
        uniform_second=bool(all(abs(c - 1.0 / d) <= tol for c in second)),
    )


@define(frozen=True, slots=True)
class DetectorSpec:
    name: str
    evaluate: Callable[[BipartiteState, CorrelationReport], Verdict] = field(repr=False)
    proven: bool
    qubits_only: bool = False
    min_pairs: int = 2


DETECTORS: dict[str, DetectorSpec] = {
    spec.name: spec for spec in (
        DetectorSpec("ppt", lambda s, r: ppt_oracle(s), proven=True),
        DetectorSpec("mi", lambda s, r: mi_criterion(r), proven=True),
        DetectorSpec("mi3", lambda s, r: mi3_criterion(r), proven=True, qubits_only=True, min_pairs=3),
        DetectorSpec("pearson2", lambda s, r: pearson_criterion(r, 2), proven=False),
        DetectorSpec("pearson3", lambda s, r: pearson_criterion(r, 3), proven=True, qubits_only=True, min_pairs=3),
        DetectorSpec("pearson_product", lambda s, r: pearson_product_criterion(r), proven=False),
        DetectorSpec("condprob", lambda s, r: condprob_criterion(r), proven=False),
        DetectorSpec("witness", lambda s, r: aggregate_witness_verdict(witness_bank(s)), proven=True, qubits_only=True),
        DetectorSpec("witness_phi_plus", lambda s, r: phi_plus_witness_verdict(s), proven=True, qubits_only=True),
        DetectorSpec("lur", lambda s, r: lur_criterion(s), proven=True, qubits_only=True),
    )
}


def get_detector(name: str) -> DetectorSpec:
    try:
        return DETECTORS[name]
    except KeyError:
        raise UnknownNameError(f"unknown detector '{name}'; choose from {', '.join(DETECTORS)}") from None


def evaluate_all(s: BipartiteState, report: CorrelationReport | None = None, mubs: MubSet | None = None) -> list[Verdict]:
    """Every applicable detector; degenerate Pearson statistics become undefined verdicts."""
    if report is None:
        if mubs is None:
            raise ContractViolationError("either a report or a MUB set is required")
        report = full_report(s, mubs)
    verdicts = []
    for spec in DETECTORS.values():
        if spec.qubits_only and s.dA != 2:
            continue
        if report.n_pairs < spec.min_pairs:
            continue
        try:
            verdicts.append(spec.evaluate(s, report))
        except DegenerateObservableError:
            verdicts.append(Verdict.undetermined(spec.name, 1.0 if spec.name != "pearson_product" else PEARSON_PRODUCT_THRESHOLD))
    return verdicts

# 🔬✨
