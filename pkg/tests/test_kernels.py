#
# tests/test_kernels.py
#
"""
The vectorised two-qubit kernels must agree with the scalar detectors.
"""
import numpy as np
import pytest

from pyvider.complementarity.bases import qubit_pauli_mubs
from pyvider.complementarity.correlations import full_report
from pyvider.complementarity.criteria import evaluate_all, ppt_oracle
from pyvider.complementarity.errors import ContractViolationError, UnknownNameError
from pyvider.complementarity.experiments.kernels import (
    BATCH_DETECTORS,
    BlochData,
    PauliStatistics,
    check_detector_names,
    detect_witness,
    detect_witness_phi_plus,
    evaluate_batch,
    ppt_entangled,
    ppt_min_eigenvalues,
)
from pyvider.complementarity.qmat import BipartiteState, min_partial_transpose_eigenvalue
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import named_state, random_density_matrices, werner


@pytest.fixture(scope="module")
def sample() -> np.ndarray:
    rhos = random_density_matrices(4, 60, RngStream(3))
    extras = np.array([named_state(n).matrix for n in ("phi_plus", "psi_minus", "rho_cc", "two_corner")])
    return np.concatenate([rhos, extras, [werner(0.5).matrix]])


class TestBlochData:
    def test_phi_plus_correlation_matrix(self) -> None:
        bloch = BlochData.from_states(named_state("phi_plus").matrix[None])
        assert np.allclose(bloch.a, 0.0)
        assert np.allclose(bloch.b, 0.0)
        assert np.allclose(bloch.T[0], np.diag([1.0, -1.0, 1.0]))

    def test_product_state_local_vectors(self) -> None:
        bloch = BlochData.from_states(BipartiteState.from_pure([1, 0, 0, 0], 2).matrix[None])
        assert np.allclose(bloch.a[0], [0, 0, 1])
        assert np.allclose(bloch.b[0], [0, 0, 1])
        assert len(bloch) == 1


class TestScalarAgreement:
    def test_ppt(self, sample: np.ndarray) -> None:
        mins = ppt_min_eigenvalues(sample)
        flags = ppt_entangled(sample)
        for k, m in enumerate(sample):
            s = BipartiteState.from_matrix(m, 2)
            assert mins[k] == pytest.approx(min_partial_transpose_eigenvalue(s), abs=1e-12)
            assert flags[k] == ppt_oracle(s).detected_entangled

    def test_statistics(self, sample: np.ndarray) -> None:
        stats = PauliStatistics.from_states(sample)
        mubs = qubit_pauli_mubs()
        for k, m in enumerate(sample):
            report = full_report(BipartiteState.from_matrix(m, 2), mubs)
            assert stats.mutual_information[k] == pytest.approx(report.i_values, abs=1e-10)
            assert stats.pearson[k] == pytest.approx([p.C.real for p in report.pairs], abs=1e-10)
            assert stats.conditional_sum[k] == pytest.approx(report.s_sum(), abs=1e-10)

    def test_detector_hits(self, sample: np.ndarray) -> None:
        names = tuple(BATCH_DETECTORS)
        _, hits = evaluate_batch(sample, names)
        mubs = qubit_pauli_mubs()
        for k, m in enumerate(sample):
            verdicts = {v.detector: v for v in evaluate_all(BipartiteState.from_matrix(m, 2), mubs=mubs)}
            for col, name in enumerate(names):
                assert hits[k, col] == verdicts[name].detected_entangled, (k, name)


class TestDetectorNames:
    def test_known(self) -> None:
        assert check_detector_names(("witness", "lur")) == ("witness", "lur")

    def test_unknown(self) -> None:
        with pytest.raises(UnknownNameError):
            check_detector_names(("ppt",))

    def test_duplicates(self) -> None:
        with pytest.raises(ContractViolationError):
            check_detector_names(("mi", "mi"))


class TestWitnessKernels:
    def test_bell_states(self) -> None:
        names = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")
        stats = PauliStatistics.from_states(np.array([named_state(n).matrix for n in names]))
        assert detect_witness(stats).tolist() == [False, True, True, True]
        assert detect_witness_phi_plus(stats).tolist() == [True, False, False, False]

    def test_werner_line(self) -> None:
        ps = np.linspace(0.0, 1.0, 31)
        stats = PauliStatistics.from_states(np.array([werner(p).matrix for p in ps]))
        assert not detect_witness(stats).any()
        assert detect_witness_phi_plus(stats).tolist() == [bool(p > 1 / 3 + 1e-9) for p in ps]

# 🧪⚡
