#
# tests/conftest.py
#
"""
Pytest configuration and fixtures for pyvider-complementarity tests.

Resets the logging system around every test, captures log output on demand,
and provides seeded random streams and the common reference states.
"""
from collections.abc import Callable, Generator
import io
import logging as stdlib_logging
import os
import sys
from typing import TextIO

import numpy as np
import pytest

from pyvider.complementarity import ComplementarityConfig, LoggingConfig, setup_logging
from pyvider.complementarity.bases import qubit_pauli_mubs
from pyvider.complementarity.core import (
    _set_log_stream_for_testing,
    reset_logging_for_testing,
)
from pyvider.complementarity.logger.custom_processors import clear_emoji_cache
from pyvider.complementarity.qmat import BipartiteState
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import named_state

_conftest_diag_logger_name = "pyvider.complementarity.conftest_diag"

def _get_conftest_diag_logger() -> stdlib_logging.Logger:
    logger = stdlib_logging.getLogger(_conftest_diag_logger_name)
    if not logger.handlers:
        handler = stdlib_logging.StreamHandler(sys.stderr)
        handler.setFormatter(stdlib_logging.Formatter("[Conftest DIAG] %(levelname)s (%(name)s): %(message)s"))
        level_str = os.getenv("PYTEST_CONFTEST_DIAG_LOG_LEVEL", "INFO").upper()
        logger.setLevel(getattr(stdlib_logging, level_str, stdlib_logging.INFO))
        logger.addHandler(handler)
        logger.propagate = False
    return logger

conftest_diag_logger = _get_conftest_diag_logger()


@pytest.fixture(autouse=True)
def manage_logging_reset_for_each_test() -> Generator[None]:
    """Every test starts and ends with pristine logging state."""
    reset_logging_for_testing()
    clear_emoji_cache()
    yield
    reset_logging_for_testing()
    _set_log_stream_for_testing(None)


@pytest.fixture
def captured_log_stream() -> Generator[TextIO]:
    """Redirects the package's log stream into a StringIO buffer."""
    stream = io.StringIO()
    _set_log_stream_for_testing(stream)
    yield stream
    _set_log_stream_for_testing(None)
    stream.close()


@pytest.fixture
def setup_logging_for_test(captured_log_stream: TextIO) -> Callable[[ComplementarityConfig | None], None]:
    """Calls `setup_logging` with output going to `captured_log_stream`."""
    def _setup(config: ComplementarityConfig | None = None) -> None:
        setup_logging(config)
    return _setup


@pytest.fixture
def json_debug_config() -> ComplementarityConfig:
    """JSON renderer at DEBUG without emoji or timestamps, for parsing log lines."""
    return ComplementarityConfig(logging=LoggingConfig(
        default_level="DEBUG",
        console_formatter="json",
        logger_name_emoji_prefix_enabled=False,
        das_emoji_prefix_enabled=False,
        omit_timestamp=True,
    ))


@pytest.fixture
def rng() -> RngStream:
    return RngStream(20240607)


@pytest.fixture
def gen() -> np.random.Generator:
    return RngStream(7).generator()


@pytest.fixture
def pauli_mubs():
    return qubit_pauli_mubs()


@pytest.fixture
def phi_plus_state() -> BipartiteState:
    return named_state("phi_plus")


@pytest.fixture
def rho_cc_state() -> BipartiteState:
    return named_state("rho_cc")

# 🧪⚙️
