#
# config.py
#
"""
Pyvider Complementarity Configuration Module.

Defines the attrs data models for logging and runtime settings, environment
variable parsing, and helpers that assemble the structlog processor chain for
the active configuration.
"""

import json
import logging as stdlib_logging
import os
import sys
from collections.abc import Callable
from typing import Any, TextIO, TypeVar, cast

from attrs import define, field, validators
import structlog

from pyvider.complementarity.logger.custom_processors import (
    StructlogProcessor,
    add_das_emoji_prefix,
    add_log_level_custom,
    add_logger_name_emoji_prefix,
    coerce_numpy_values,
    filter_by_level_custom,
)
from pyvider.complementarity.types import (
    _VALID_FORMATTER_TUPLE,
    _VALID_LOG_LEVEL_TUPLE,
    TRACE_LEVEL_NUM,
    ConsoleFormatterStr,
    LogLevelStr,
)

_LEVEL_TO_NUMERIC: dict[LogLevelStr, int] = {
    "CRITICAL": stdlib_logging.CRITICAL,
    "ERROR": stdlib_logging.ERROR,
    "WARNING": stdlib_logging.WARNING,
    "INFO": stdlib_logging.INFO,
    "DEBUG": stdlib_logging.DEBUG,
    "TRACE": TRACE_LEVEL_NUM,
    "NOTSET": stdlib_logging.NOTSET,
}

DEFAULT_LOG_LEVEL: LogLevelStr = "WARNING"
DEFAULT_THREADS: int = 1
DEFAULT_CHUNK_SIZE: int = 10_000

config_warnings_logger = stdlib_logging.getLogger("pyvider.complementarity.config_warnings")
_config_warning_formatter = stdlib_logging.Formatter(
    "[Complementarity Config Warning] %(levelname)s (%(name)s): %(message)s"
)

def _ensure_config_logger_handler(logger: stdlib_logging.Logger) -> None:
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    stderr_handler = stdlib_logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(_config_warning_formatter)
    logger.addHandler(stderr_handler)
    logger.setLevel(stdlib_logging.WARNING)
    logger.propagate = False

def _warn_config(message: str) -> None:
    _ensure_config_logger_handler(config_warnings_logger)
    config_warnings_logger.warning(f"⚙️➡️⚠️ {message}")


@define(frozen=True, slots=True)
class LoggingConfig:
    """Configuration specific to logging behavior."""
    default_level: LogLevelStr = field(default=DEFAULT_LOG_LEVEL, validator=validators.in_(_VALID_LOG_LEVEL_TUPLE))
    module_levels: dict[str, LogLevelStr] = field(factory=dict)
    console_formatter: ConsoleFormatterStr = field(default="key_value", validator=validators.in_(_VALID_FORMATTER_TUPLE))
    logger_name_emoji_prefix_enabled: bool = field(default=True)
    das_emoji_prefix_enabled: bool = field(default=True)
    omit_timestamp: bool = field(default=False)


@define(frozen=True, slots=True)
class RuntimeConfig:
    """
    Execution settings for the batch experiments.

    `chunk_size` fixes how the sample range is partitioned into RNG streams and
    therefore takes part in reproducibility; `threads` never does.
    """
    threads: int = field(default=DEFAULT_THREADS, validator=[validators.instance_of(int), validators.ge(1)])
    chunk_size: int = field(default=DEFAULT_CHUNK_SIZE, validator=[validators.instance_of(int), validators.ge(1)])


@define(frozen=True, slots=True)
class ComplementarityConfig:
    """Main configuration object for the package."""
    logging: LoggingConfig = field(factory=LoggingConfig)
    runtime: RuntimeConfig = field(factory=RuntimeConfig)
    globally_disabled: bool = field(default=False)

    @classmethod
    def from_env(cls) -> "ComplementarityConfig":
        """Builds the configuration from `PYVIDER_*` environment variables; bad values warn and fall back."""
        default_level = _parse_choice_env("PYVIDER_LOG_LEVEL", _VALID_LOG_LEVEL_TUPLE, DEFAULT_LOG_LEVEL, str.upper)
        formatter = _parse_choice_env("PYVIDER_LOG_CONSOLE_FORMATTER", _VALID_FORMATTER_TUPLE, "key_value", str.lower)
        emoji_default = formatter == "key_value"
        log_cfg = LoggingConfig(
            default_level=default_level,
            module_levels=cls._parse_module_levels(os.getenv("PYVIDER_LOG_MODULE_LEVELS", "")),
            console_formatter=formatter,
            logger_name_emoji_prefix_enabled=_parse_bool_env("PYVIDER_LOG_LOGGER_NAME_EMOJI_ENABLED", emoji_default),
            das_emoji_prefix_enabled=_parse_bool_env("PYVIDER_LOG_DAS_EMOJI_ENABLED", emoji_default),
            omit_timestamp=_parse_bool_env("PYVIDER_LOG_OMIT_TIMESTAMP", False),
        )
        runtime_cfg = RuntimeConfig(
            threads=_parse_positive_int_env("PYVIDER_THREADS", DEFAULT_THREADS),
            chunk_size=_parse_positive_int_env("PYVIDER_MC_CHUNK_SIZE", DEFAULT_CHUNK_SIZE),
        )
        return cls(
            logging=log_cfg,
            runtime=runtime_cfg,
            globally_disabled=_parse_bool_env("PYVIDER_LOGGING_DISABLED", False),
        )

    @staticmethod
    def _parse_module_levels(levels_str: str) -> dict[str, LogLevelStr]:
        """`module:LEVEL` pairs separated by commas; malformed items are skipped with a warning."""
        levels: dict[str, LogLevelStr] = {}
        for item in filter(None, (part.strip() for part in levels_str.split(","))):
            module_name, sep, level_raw = (s.strip() for s in item.partition(":"))
            if not (sep and module_name):
                _warn_config(f"Invalid item '{item}' in PYVIDER_LOG_MODULE_LEVELS. Skipping.")
            elif level_raw.upper() not in _VALID_LOG_LEVEL_TUPLE:
                _warn_config(f"Invalid log level '{level_raw.upper()}' for module '{module_name}'. Skipping.")
            else:
                levels[module_name] = cast(LogLevelStr, level_raw.upper())
        return levels


_Choice = TypeVar("_Choice", bound=str)


def _parse_choice_env(env_var: str, choices: tuple[_Choice, ...], default: _Choice, normalize: Callable[[str], str]) -> _Choice:
    raw = normalize(os.getenv(env_var, default))
    if raw in choices:
        return cast(_Choice, raw)
    _warn_config(f"Invalid {env_var} '{raw}'. Defaulting to {default}.")
    return default


def _parse_bool_env(env_var: str, default: bool) -> bool:
    value = os.getenv(env_var)
    return value.strip().lower() in ("true", "1", "yes") if value is not None else default


def _parse_positive_int_env(env_var: str, default: int) -> int:
    raw = os.getenv(env_var)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        _warn_config(f"Invalid {env_var} '{raw}'. Defaulting to {default}.")
        return default
    if value < 1:
        _warn_config(f"{env_var} must be >= 1, got {value}. Defaulting to {default}.")
        return default
    return value

def _config_create_timestamp_processors(omit_timestamp: bool) -> list[StructlogProcessor]:
    processors: list[StructlogProcessor] = [structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S.%f", utc=False)]
    if omit_timestamp:
        def pop_timestamp_processor(_logger: Any, _method_name: str, event_dict: structlog.types.EventDict) -> structlog.types.EventDict:
            event_dict.pop("timestamp", None)
            return event_dict
        processors.append(cast(StructlogProcessor, pop_timestamp_processor))
    return processors

def _config_create_emoji_processors(logging_config: LoggingConfig) -> list[StructlogProcessor]:
    processors: list[StructlogProcessor] = []
    if logging_config.logger_name_emoji_prefix_enabled:
        processors.append(cast(StructlogProcessor, add_logger_name_emoji_prefix))
    if logging_config.das_emoji_prefix_enabled:
        processors.append(cast(StructlogProcessor, add_das_emoji_prefix))
    return processors

def _build_core_processors_list(config: ComplementarityConfig) -> list[StructlogProcessor]:
    log_cfg = config.logging
    processors: list[StructlogProcessor] = [
        structlog.contextvars.merge_contextvars,
        cast(StructlogProcessor, add_log_level_custom),
        cast(StructlogProcessor, filter_by_level_custom(
            default_level_str=log_cfg.default_level,
            module_levels=log_cfg.module_levels,
            level_to_numeric_map=_LEVEL_TO_NUMERIC
        )),
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        cast(StructlogProcessor, coerce_numpy_values),
    ]
    processors.extend(_config_create_timestamp_processors(log_cfg.omit_timestamp))
    processors.extend(_config_create_emoji_processors(log_cfg))
    return processors

def _config_create_json_formatter_processors() -> list[StructlogProcessor]:
    return [structlog.processors.format_exc_info, structlog.processors.JSONRenderer(serializer=json.dumps, sort_keys=False)]

def _config_create_keyvalue_formatter_processors(output_stream: TextIO) -> list[StructlogProcessor]:
    def pop_logger_name_processor(_logger: object, _method_name: str, event_dict: structlog.types.EventDict) -> structlog.types.EventDict:
        event_dict.pop("logger_name", None)
        return event_dict
    is_tty = hasattr(output_stream, 'isatty') and output_stream.isatty()
    return [
        cast(StructlogProcessor, pop_logger_name_processor),
        structlog.dev.ConsoleRenderer(colors=is_tty, exception_formatter=structlog.dev.plain_traceback)
    ]

def _build_formatter_processors_list(logging_config: LoggingConfig, output_stream: TextIO) -> list[StructlogProcessor]:
    match logging_config.console_formatter:
        case "json": return _config_create_json_formatter_processors()
        case "key_value": return _config_create_keyvalue_formatter_processors(output_stream)
        case unknown_formatter: # pragma: no cover
            _warn_config(f"Unknown formatter '{unknown_formatter}'. Defaulting to 'key_value'.")
            return _config_create_keyvalue_formatter_processors(output_stream)

# ⚛️🔩
