#
# tests/test_utils.py
#
"""
Tests for pyvider.complementarity.utils.timed_block.
"""
import json
from typing import TextIO

import pytest

from pyvider.complementarity import ComplementarityConfig, logger, setup_logging
from pyvider.complementarity.utils import timed_block


def _records(stream: TextIO) -> list[dict]:
    return [json.loads(line) for line in stream.getvalue().splitlines() if line.strip()]


class TestTimedBlock:
    def test_success_logs_duration_and_extra_fields(self, captured_log_stream: TextIO, json_debug_config: ComplementarityConfig) -> None:
        setup_logging(json_debug_config)
        with timed_block(logger, "montecarlo run", domain="montecarlo", n=10) as kv:
            kv["entangled_fraction"] = 0.25
        (record,) = _records(captured_log_stream)
        assert record["event"] == "montecarlo run"
        assert record["outcome"] == "success"
        assert record["n"] == 10
        assert record["entangled_fraction"] == 0.25
        assert isinstance(record["duration_ms"], int) and record["duration_ms"] >= 0
        assert record["level"] == "info"
        assert record["status"] == "success"
        assert record["per_second"] > 0

    def test_error_is_logged_and_reraised(self, captured_log_stream: TextIO, json_debug_config: ComplementarityConfig) -> None:
        setup_logging(json_debug_config)
        with pytest.raises(RuntimeError, match="boom"), timed_block(logger, "sweep"):
            raise RuntimeError("boom")
        (record,) = _records(captured_log_stream)
        assert record["outcome"] == "error"
        assert record["error.type"] == "RuntimeError"
        assert record["error.message"] == "boom"
        assert record["level"] == "error"
        assert record["status"] == "failure"
        assert "per_second" not in record

# ⏱️🧪
