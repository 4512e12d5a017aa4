#
# errors.py
#
"""
Exception hierarchy for Pyvider Complementarity.

Library code raises these; only the command-line front end turns them into
exit codes.
"""


class ComplementarityError(Exception):
    """Base class for every error raised by this package."""


class ContractViolationError(ComplementarityError, ValueError):
    """An input broke a documented precondition (shape, hermiticity, unitarity...)."""


class InvalidDensityMatrixError(ContractViolationError):
    """Matrix is not Hermitian, unit-trace and positive semidefinite within tolerance."""


class DimensionMismatchError(ContractViolationError):
    """Operand dimensions do not agree."""


class InvalidDimensionError(ContractViolationError):
    """Dimension outside the supported range 2..16."""


class ParameterRangeError(ContractViolationError):
    """A family parameter (p, ε) lies outside its range."""


class UnsupportedDimensionError(ComplementarityError):
    """The operation exists, but not for this dimension (e.g. non-prime d for full MUB sets)."""


class UndefinedConditionalError(ComplementarityError):
    """Conditioning on an outcome whose probability is zero."""


class DegenerateObservableError(ComplementarityError):
    """Pearson coefficient requested for an observable with zero variance."""


class UnknownNameError(ComplementarityError, KeyError):
    """Unknown catalog state, family, or detector name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ConfigError(ComplementarityError):
    """Invalid command-line or config-file settings."""


class MatrixParseError(ComplementarityError):
    """A matrix input file could not be parsed."""


class ExportError(ComplementarityError):
    """Results could not be written to the requested path."""
