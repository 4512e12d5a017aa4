#
# base.py
#
"""
The package-wide `logger` object.

Logging configures itself on first use from the environment unless
`setup_logging` ran first; Monte Carlo worker threads may hit that first use
concurrently, so the lazy path is guarded by a lock and degrades to a plain
stderr renderer if configuration fails.
"""

from collections.abc import Callable
import contextlib
import io
import sys
import threading
from typing import TYPE_CHECKING, Any, TextIO, cast

from attrs import define
import structlog
from structlog.types import BindableLogger

from pyvider.complementarity.types import TRACE_LEVEL_NAME

if TYPE_CHECKING:
    from pyvider.complementarity.config import ComplementarityConfig

ROOT_LOGGER_NAME = "pyvider.complementarity"
DYNAMIC_LOGGER_NAME = f"{ROOT_LOGGER_NAME}.dynamic"


@define(slots=True)
class LazySetupState:
    done: bool = False
    error: BaseException | None = None
    in_progress: bool = False

    @property
    def healthy(self) -> bool:
        return self.done and self.error is None

    def reset(self) -> None:
        self.done, self.error, self.in_progress = False, None, False


_LAZY_SETUP_LOCK = threading.Lock()
_LAZY_SETUP = LazySetupState()


def _get_safe_stderr() -> TextIO:
    return sys.stderr if getattr(sys, "stderr", None) is not None else io.StringIO()


def _structlog_disabled() -> bool:
    with contextlib.suppress(Exception):
        return isinstance(structlog.get_config().get("logger_factory"), structlog.ReturnLoggerFactory)
    return False


def _interpolate(event: Any, args: tuple[Any, ...]) -> str:
    text = "" if event is None else str(event)
    if not args:
        return text
    try:
        return text % args
    except (TypeError, ValueError, KeyError):
        return f"{text} {' '.join(map(str, args))}"


def _level_method(level: str) -> Callable[..., None]:
    def method(self: "ComplementarityLogger", event: str, *args: Any, **kwargs: Any) -> None:
        self._emit(level, event, args, kwargs)
    method.__name__ = level
    method.__doc__ = f"Logs `event` at {level.upper()} under `{DYNAMIC_LOGGER_NAME}`."
    return method


class ComplementarityLogger:
    """Facade over structlog; modules call `logger.get_logger(__name__)`."""

    def __init__(self) -> None:
        self._is_configured_by_setup: bool = False
        self._active_config: ComplementarityConfig | None = None

    def _ensure_configured(self) -> None:
        if self._is_configured_by_setup or _LAZY_SETUP.healthy:
            return
        if _LAZY_SETUP.in_progress or _LAZY_SETUP.error is not None:
            self._setup_emergency_fallback()
            return
        if _structlog_disabled():
            with _LAZY_SETUP_LOCK:
                _LAZY_SETUP.done = True
            return

        with _LAZY_SETUP_LOCK:
            if self._is_configured_by_setup or _LAZY_SETUP.healthy:
                return
            if _LAZY_SETUP.error is not None:
                self._setup_emergency_fallback()
                return
            _LAZY_SETUP.in_progress = True
            try:
                self._perform_lazy_setup()
            except Exception as e:
                _LAZY_SETUP.error = e
                _LAZY_SETUP.done = False
                self._setup_emergency_fallback()
            finally:
                _LAZY_SETUP.in_progress = False

    def _perform_lazy_setup(self) -> None:
        from pyvider.complementarity.core import _internal_setup
        _internal_setup(config=None, is_explicit_call=False)

    def _setup_emergency_fallback(self) -> None:
        try:
            structlog.configure(
                processors=[structlog.dev.ConsoleRenderer(colors=False)],
                logger_factory=structlog.PrintLoggerFactory(file=_get_safe_stderr()),
                wrapper_class=cast(type[BindableLogger], structlog.BoundLogger),
                cache_logger_on_first_use=True,
            )
        except Exception:
            with contextlib.suppress(Exception):
                structlog.configure(processors=[], logger_factory=structlog.ReturnLoggerFactory(), cache_logger_on_first_use=True)

    def get_logger(self, name: str | None = None) -> Any:
        self._ensure_configured()
        return structlog.get_logger().bind(logger_name=name or ROOT_LOGGER_NAME)

    def _emit(self, level: str, event: Any, args: tuple[Any, ...], kwargs: dict[str, Any]) -> None:
        getattr(self.get_logger(DYNAMIC_LOGGER_NAME), level)(_interpolate(event, args), **kwargs)

    debug = _level_method("debug")
    info = _level_method("info")
    warning = _level_method("warning")
    warn = warning
    error = _level_method("error")
    critical = _level_method("critical")

    def exception(self, event: str, *args: Any, **kwargs: Any) -> None:
        kwargs.setdefault("exc_info", True)
        self._emit("error", event, args, kwargs)

    def trace(self, event: str, *args: Any, _pyvider_logger_name: str | None = None, **kwargs: Any) -> None:
        """Below DEBUG; the level travels as a hint that `add_log_level_custom` resolves."""
        kwargs["_pyvider_level_hint"] = TRACE_LEVEL_NAME.lower()
        self.get_logger(_pyvider_logger_name or DYNAMIC_LOGGER_NAME).msg(_interpolate(event, args), **kwargs)


logger: ComplementarityLogger = ComplementarityLogger()

# 🐍📝
