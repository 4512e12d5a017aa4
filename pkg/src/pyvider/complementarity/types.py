#
# types.py
#
"""
Pyvider Complementarity Type Definitions and Constants.

This module centralizes type aliases, literal choices and numerical tolerances
used throughout the `pyvider-complementarity` package.
"""
import logging as stdlib_logging
from typing import Literal

# --- Core Log Level and Formatter Types ---
LogLevelStr = Literal["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG", "TRACE", "NOTSET"]
"""Type alias for valid log level strings."""

_VALID_LOG_LEVEL_TUPLE: tuple[LogLevelStr, ...] = (
    "CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG", "TRACE", "NOTSET"
)

ConsoleFormatterStr = Literal["key_value", "json"]
"""Console renderer choices for log output."""

_VALID_FORMATTER_TUPLE: tuple[ConsoleFormatterStr, ...] = ("key_value", "json")

TRACE_LEVEL_NUM: int = 5
TRACE_LEVEL_NAME: str = "TRACE"

if not hasattr(stdlib_logging, TRACE_LEVEL_NAME): # pragma: no cover
    stdlib_logging.addLevelName(TRACE_LEVEL_NUM, TRACE_LEVEL_NAME)

# --- Domain Literals ---
Subsystem = Literal["A", "B"]
"""Which half of a bipartite system an operation acts on."""

Measure = Literal["I", "C", "S"]
"""Correlation measures: mutual information, Pearson modulus, conditional-probability sum."""

_VALID_MEASURE_TUPLE: tuple[Measure, ...] = ("I", "C", "S")

OutputFormat = Literal["csv", "json"]
_VALID_OUTPUT_FORMAT_TUPLE: tuple[OutputFormat, ...] = ("csv", "json")

OptimizationMode = Literal["fixed", "optimize_second", "optimize_both", "optimize_3mub"]
_VALID_OPTIMIZATION_MODE_TUPLE: tuple[OptimizationMode, ...] = (
    "fixed", "optimize_second", "optimize_both", "optimize_3mub"
)

CommandName = Literal["analyze", "sweep", "montecarlo", "lur-compare", "optimize"]

# --- Numerical Tolerances ---
HERMITIAN_TOL: float = 1e-10
"""Max entrywise |M - M†| accepted as Hermitian."""

TRACE_TOL: float = 1e-10
PSD_TOL: float = 1e-9
"""Most negative eigenvalue accepted for a density matrix."""

ORTHONORMAL_TOL: float = 1e-10
COMPLEMENTARITY_TOL: float = 1e-9
UNITARY_TOL: float = 1e-9
PROBABILITY_FLOOR: float = 1e-12
"""Probabilities at or below this are treated as zero when conditioning."""

DETECTION_SLACK: float = 1e-9
PPT_SLACK: float = 1e-10
MAX_SUBSYSTEM_DIM: int = 16
