#
# core.py
#
"""
Pyvider Complementarity Core Logging Setup.
Handles setup, global state and processor chain assembly for structlog.
"""

import io
import logging as stdlib_logging
import os
import sys
import threading
from typing import Any, TextIO, cast

import structlog
from structlog.types import BindableLogger

from pyvider.complementarity.config import (
    ComplementarityConfig,
    _build_core_processors_list,
    _build_formatter_processors_list,
)
from pyvider.complementarity.logger import base as logger_base_module

_SETUP_LOCK = threading.Lock()
_LOG_STREAM: TextIO = sys.stderr
_CORE_SETUP_LOGGER_NAME = "pyvider.complementarity.core_setup"
_EXPLICIT_SETUP_DONE = False

def _get_safe_stderr() -> TextIO:
    return sys.stderr if hasattr(sys, 'stderr') and sys.stderr is not None else io.StringIO()

def _set_log_stream_for_testing(stream: TextIO | None) -> None:
    global _LOG_STREAM
    _LOG_STREAM = stream if stream is not None else sys.stderr

def _ensure_stderr_default() -> None:
    # stdout carries CLI results; logs must never land there.
    global _LOG_STREAM
    if _LOG_STREAM is sys.stdout:
        _LOG_STREAM = sys.stderr

def _create_core_setup_logger(globally_disabled: bool = False) -> stdlib_logging.Logger:
    logger = stdlib_logging.getLogger(_CORE_SETUP_LOGGER_NAME)
    for h in list(logger.handlers):
        logger.removeHandler(h)
        try:
            if isinstance(h, stdlib_logging.StreamHandler) and h.stream not in (sys.stdout, sys.stderr, _LOG_STREAM):
                h.close()
        except Exception:
            pass
    handler: stdlib_logging.Handler = stdlib_logging.NullHandler() if globally_disabled else stdlib_logging.StreamHandler(_get_safe_stderr())
    if not globally_disabled:
        handler.setFormatter(stdlib_logging.Formatter("[Complementarity Setup] %(levelname)s (%(name)s): %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(getattr(stdlib_logging, os.getenv("PYVIDER_CORE_SETUP_LOG_LEVEL", "WARNING").upper(), stdlib_logging.WARNING))
    logger.propagate = False
    return logger

_core_setup_logger = _create_core_setup_logger()

def _build_complete_processor_chain(config: ComplementarityConfig) -> list[Any]:
    core_processors = _build_core_processors_list(config)
    formatter_processors = _build_formatter_processors_list(config.logging, _LOG_STREAM)
    _core_setup_logger.info(f"📝➡️🎨 Configured {config.logging.console_formatter} renderer.")
    return cast(list[Any], core_processors + formatter_processors)

def _apply_structlog_configuration(processors: list[Any]) -> None:
    stream_name = 'sys.stderr' if sys.stderr == _LOG_STREAM else 'custom stream (testing)'
    structlog.configure(
        processors=processors,
        logger_factory=structlog.PrintLoggerFactory(file=_LOG_STREAM),
        wrapper_class=cast(type[BindableLogger], structlog.BoundLogger),
        cache_logger_on_first_use=True,
    )
    _core_setup_logger.info(f"📝➡️✅ structlog configured. Output: {stream_name}.")

def _handle_globally_disabled_setup() -> None:
    _core_setup_logger.info("⚙️➡️🚫 Complementarity logging globally disabled.")
    structlog.configure(processors=[], logger_factory=structlog.ReturnLoggerFactory(), cache_logger_on_first_use=True)

def _reset_logger_state() -> None:
    structlog.reset_defaults()
    logger_base_module.logger._is_configured_by_setup = False
    logger_base_module.logger._active_config = None
    logger_base_module._LAZY_SETUP.reset()

def reset_logging_for_testing() -> None:
    """
    Resets `structlog` defaults and the package's internal logger state.
    Test utility; production code never calls it.
    """
    global _LOG_STREAM, _core_setup_logger, _EXPLICIT_SETUP_DONE
    with _SETUP_LOCK:
        _reset_logger_state()
        _LOG_STREAM = sys.stderr
        _EXPLICIT_SETUP_DONE = False
        _core_setup_logger = _create_core_setup_logger()

def _internal_setup(config: ComplementarityConfig | None = None, is_explicit_call: bool = False) -> None:
    """Shared by explicit and lazy setup. Callers hold the relevant lock."""
    global _core_setup_logger

    _reset_logger_state()

    current_config = config if config is not None else ComplementarityConfig.from_env()
    _core_setup_logger = _create_core_setup_logger(globally_disabled=current_config.globally_disabled)

    if current_config.globally_disabled:
        _handle_globally_disabled_setup()
    else:
        _core_setup_logger.info("⚙️➡️🚀 Starting structlog setup...")
        _apply_structlog_configuration(_build_complete_processor_chain(current_config))

    logger_base_module.logger._is_configured_by_setup = is_explicit_call
    logger_base_module.logger._active_config = current_config
    logger_base_module._LAZY_SETUP.done = True

    if not current_config.globally_disabled:
        _core_setup_logger.info("⚙️➡️✅ structlog setup completed.")

def setup_logging(config: ComplementarityConfig | None = None) -> None:
    """Initializes or reconfigures logging for the package."""
    global _EXPLICIT_SETUP_DONE
    with _SETUP_LOCK:
        _ensure_stderr_default()
        _internal_setup(config, is_explicit_call=True)
        _EXPLICIT_SETUP_DONE = True

def active_config() -> ComplementarityConfig:
    """The configuration currently in force, resolving it lazily from the environment."""
    logger_base_module.logger._ensure_configured()
    cfg = logger_base_module.logger._active_config
    return cfg if cfg is not None else ComplementarityConfig.from_env()

# ⚙️🚀
