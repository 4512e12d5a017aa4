#
# utils.py
#
"""
Timing helper for the batch experiments.
"""
from collections.abc import Generator
from contextlib import contextmanager
import time
from typing import Any, Protocol


class _EventLogger(Protocol):
    def info(self, event: str, *args: Any, **kwargs: Any) -> Any: ...
    def error(self, event: str, *args: Any, **kwargs: Any) -> Any: ...


@contextmanager
def timed_block(logger_instance: _EventLogger, event_name: str, **initial_kvs: Any) -> Generator[dict[str, Any]]:
    """
    Logs one event when the block exits, carrying its duration and outcome.

    Fields put into the yielded dict are attached to that event. A DAS `status`
    of `success`/`failure` is filled in unless the caller set one, and when the
    event carries a sample count `n` the throughput is added as `per_second`.

    Example:
        ```python
        with timed_block(log, "montecarlo run", domain="montecarlo", action="run", n=n) as kv:
            tally = ...
            kv["n_entangled"] = tally.n_entangled
        ```
    """
    started = time.perf_counter()
    fields = dict(initial_kvs)
    extra: dict[str, Any] = {}
    failed = False
    try:
        yield extra
    except Exception as e:
        failed = True
        fields["error.message"] = str(e)
        fields["error.type"] = type(e).__name__
        raise
    finally:
        elapsed = time.perf_counter() - started
        fields.update(extra)
        fields["outcome"] = "error" if failed else "success"
        fields.setdefault("status", "failure" if failed else "success")
        fields["duration_ms"] = int(elapsed * 1000)
        if not failed and isinstance(fields.get("n"), int) and elapsed > 0:
            fields["per_second"] = round(fields["n"] / elapsed, 1)
        (logger_instance.error if failed else logger_instance.info)(event_name, **fields)

# ⏱️🪵
