#
# __init__.py
#
"""
Pyvider Complementarity.

Correlations measured in mutually unbiased bases (mutual information, Pearson
coefficients, sums of conditional probabilities) and the entanglement
criteria built on them, together with the experiment drivers that compare
those criteria against the PPT oracle.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("pyvider-complementarity")
except PackageNotFoundError: # pragma: no cover
    __version__ = "0.0.0-dev"

from pyvider.complementarity.bases import (
    MubPair,
    MubSet,
    Observable,
    OrthonormalBasis,
    computational_basis,
    fourier_basis,
    mub_set,
    prime_d_mubs,
    qubit_pauli_mubs,
)
from pyvider.complementarity.config import (
    ComplementarityConfig,
    LoggingConfig,
    RuntimeConfig,
)
from pyvider.complementarity.core import setup_logging
from pyvider.complementarity.correlations import (
    CorrelationReport,
    JointDistribution,
    conditional_sum,
    full_report,
    joint_distribution,
    mutual_information,
    pearson,
)
from pyvider.complementarity.criteria import (
    DETECTORS,
    Verdict,
    condprob_criterion,
    evaluate_all,
    lur_criterion,
    max_entanglement_test,
    mi_criterion,
    pearson_criterion,
    phi_plus_witness_verdict,
    ppt_oracle,
    witness_bank,
)
from pyvider.complementarity.errors import (
    ComplementarityError,
    ConfigError,
    ContractViolationError,
)
from pyvider.complementarity.logger import logger
from pyvider.complementarity.qmat import BipartiteState, DensityMatrix
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import (
    FAMILIES,
    named_state,
    random_density_matrix,
    werner,
)
from pyvider.complementarity.utils import timed_block

__all__ = [
    # Linear algebra and states
    "BipartiteState",
    "DensityMatrix",
    "FAMILIES",
    "named_state",
    "random_density_matrix",
    "werner",
    "RngStream",
    # Bases
    "MubPair",
    "MubSet",
    "Observable",
    "OrthonormalBasis",
    "computational_basis",
    "fourier_basis",
    "mub_set",
    "prime_d_mubs",
    "qubit_pauli_mubs",
    # Correlations
    "CorrelationReport",
    "JointDistribution",
    "conditional_sum",
    "full_report",
    "joint_distribution",
    "mutual_information",
    "pearson",
    # Criteria
    "DETECTORS",
    "Verdict",
    "condprob_criterion",
    "evaluate_all",
    "lur_criterion",
    "max_entanglement_test",
    "mi_criterion",
    "pearson_criterion",
    "phi_plus_witness_verdict",
    "ppt_oracle",
    "witness_bank",
    # Configuration, logging and errors
    "ComplementarityConfig",
    "LoggingConfig",
    "RuntimeConfig",
    "setup_logging",
    "logger",
    "timed_block",
    "ComplementarityError",
    "ConfigError",
    "ContractViolationError",
    # Version
    "__version__",
]

# 🐍📝
