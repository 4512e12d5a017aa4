#
# custom_processors.py
#
"""
Structlog processors used by the complementarity logging chain.

Level resolution and filtering, numpy value coercion, the logger-name emoji
prefix and the domain-action-status (DAS) emoji prefix.
"""
from typing import Any, Protocol, cast

from attrs import define, field
import numpy as np
import structlog
from structlog.types import EventDict

from pyvider.complementarity.logger.emoji_matrix import (
    PRIMARY_EMOJI,
    SECONDARY_EMOJI,
    TERTIARY_EMOJI,
)
from pyvider.complementarity.types import LogLevelStr

_METHOD_LEVEL_ALIASES: dict[str, str] = {"exception": "error", "warn": "warning", "msg": "info"}


class StructlogProcessor(Protocol):
    def __call__(self, logger: Any, method_name: str, event_dict: EventDict) -> EventDict: ...


def add_log_level_custom(_logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Sets `level`; a `_pyvider_level_hint` (used for TRACE) overrides the method name."""
    hint: str | None = event_dict.pop("_pyvider_level_hint", None)
    if hint is not None:
        event_dict["level"] = hint.lower()
    else:
        event_dict.setdefault("level", _METHOD_LEVEL_ALIASES.get(method_name, method_name.lower()))
    return event_dict


@define(slots=True)
class LevelFilter:
    """Drops events below the threshold of the longest matching module prefix."""
    default_level: int
    module_levels: dict[str, int]
    level_to_numeric: dict[LogLevelStr, int]
    _prefixes: list[str] = field(init=False)
    _thresholds: dict[str, int] = field(init=False, factory=dict)

    def __attrs_post_init__(self) -> None:
        self._prefixes = sorted(self.module_levels, key=len, reverse=True)

    def threshold_for(self, logger_name: str) -> int:
        cached = self._thresholds.get(logger_name)
        if cached is None:
            prefix = next((p for p in self._prefixes if logger_name.startswith(p)), None)
            cached = self.default_level if prefix is None else self.module_levels[prefix]
            self._thresholds[logger_name] = cached
        return cached

    def __call__(self, _logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
        level_text = str(event_dict.get("level", "info")).upper()
        level = self.level_to_numeric.get(cast(LogLevelStr, level_text), self.level_to_numeric["INFO"])
        if level < self.threshold_for(event_dict.get("logger_name", "")):
            raise structlog.DropEvent
        return event_dict


def filter_by_level_custom(
    default_level_str: LogLevelStr,
    module_levels: dict[str, LogLevelStr],
    level_to_numeric_map: dict[LogLevelStr, int],
) -> LevelFilter:
    return LevelFilter(
        level_to_numeric_map[default_level_str],
        {module: level_to_numeric_map[level] for module, level in module_levels.items()},
        level_to_numeric_map,
    )


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def coerce_numpy_values(_logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
    """numpy scalars and arrays become builtins so every renderer can serialise them."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic | np.ndarray):
            event_dict[key] = _plain(value)
    return event_dict


_LOGGER_NAME_EMOJI_PREFIXES: dict[str, str] = {
    'pyvider.complementarity.core_setup': '🛠️',
    'pyvider.complementarity.qmat': '🧮',
    'pyvider.complementarity.bases': '🧭',
    'pyvider.complementarity.states': '⚛️',
    'pyvider.complementarity.correlations': '🔗',
    'pyvider.complementarity.criteria': '🔬',
    'pyvider.complementarity.experiments.sweep': '📈',
    'pyvider.complementarity.experiments.montecarlo': '🎲',
    'pyvider.complementarity.experiments.optimization': '🎯',
    'pyvider.complementarity.experiments.export': '💾',
    'pyvider.complementarity.experiments': '🧪',
    'pyvider.complementarity.cli': '⌨️',
    'pyvider.complementarity.dynamic': '🗣️',
    'pyvider.complementarity': '⚙️',
    'test': '🧪',
}
_FALLBACK_LOGGER_EMOJI = '🔹'
_SORTED_LOGGER_NAME_EMOJI_KEYWORDS: list[str] = sorted(_LOGGER_NAME_EMOJI_PREFIXES, key=len, reverse=True)
_EMOJI_LOOKUP_CACHE: dict[str, str] = {}
_EMOJI_CACHE_SIZE_LIMIT: int = 1000


def _emoji_for_logger_name(logger_name: str) -> str:
    emoji = _EMOJI_LOOKUP_CACHE.get(logger_name)
    if emoji is None:
        keyword = next((k for k in _SORTED_LOGGER_NAME_EMOJI_KEYWORDS if logger_name.startswith(k)), None)
        emoji = _FALLBACK_LOGGER_EMOJI if keyword is None else _LOGGER_NAME_EMOJI_PREFIXES[keyword]
        if len(_EMOJI_LOOKUP_CACHE) < _EMOJI_CACHE_SIZE_LIMIT:
            _EMOJI_LOOKUP_CACHE[logger_name] = emoji
    return emoji


def _prefix_event(event_dict: EventDict, prefix: str) -> EventDict:
    event = event_dict.get("event")
    event_dict["event"] = prefix if event is None else f"{prefix} {event}"
    return event_dict


def add_logger_name_emoji_prefix(_logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
    return _prefix_event(event_dict, _emoji_for_logger_name(event_dict.get("logger_name", "default")))


def _das_lookup(table: dict[str, str], key: Any) -> str:
    return table.get(str(key).lower(), table["default"]) if key else table["default"]


def add_das_emoji_prefix(_logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
    """Replaces `domain`/`action`/`status` keys with a `[d][a][s]` emoji prefix."""
    domain, action, status = (event_dict.pop(k, None) for k in ("domain", "action", "status"))
    if not (domain or action or status):
        return event_dict
    prefix = (f"[{_das_lookup(PRIMARY_EMOJI, domain)}]"
              f"[{_das_lookup(SECONDARY_EMOJI, action)}]"
              f"[{_das_lookup(TERTIARY_EMOJI, status)}]")
    return _prefix_event(event_dict, prefix)


def clear_emoji_cache() -> None:
    _EMOJI_LOOKUP_CACHE.clear()

# 🧱✨
