#
# export.py
#
"""
CSV and JSON writers for sweep rows, Monte Carlo tallies and optimisation
summaries.

Output is byte-stable: fixed column order, floats with 12 significant digits,
LF line endings, no timestamps. Undefined values are empty CSV cells and JSON
`null`.
"""

from collections.abc import Mapping, Sequence
import csv
from importlib.metadata import PackageNotFoundError, version
import io
import json
import math
from pathlib import Path
from typing import Any

from pyvider.complementarity.errors import ContractViolationError, ExportError
from pyvider.complementarity.experiments.optimization import OptimizationSummary
from pyvider.complementarity.experiments.sweep import SWEEP_COLUMNS, SweepRow
from pyvider.complementarity.experiments.tally import TallyMatrix
from pyvider.complementarity.logger import logger
from pyvider.complementarity.types import _VALID_OUTPUT_FORMAT_TUPLE, OutputFormat

Results = Sequence[SweepRow] | TallyMatrix | Sequence[OptimizationSummary]

TALLY_COLUMNS: tuple[str, ...] = ("kind", "name", "count", "fraction")
OPTIMIZATION_COLUMNS: tuple[str, ...] = (
    "mode", "n_states", "n_directions", "n_pairs", "n_entangled", "n_detected",
    "n_false_positive", "detected_fraction", "bin_lo", "bin_hi", "entangled", "separable",
)


def package_version() -> str:
    try:
        return version("pyvider-complementarity")
    except PackageNotFoundError: # pragma: no cover
        return "0.0.0-dev"


def format_cell(value: Any) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "true" if value else "false"
        case int():
            return str(value)
        case float():
            return "" if math.isnan(value) else format(value, ".12g")
        case _:
            return str(value)


def json_ready(value: Any) -> Any:
    """Recursively rounds floats to 12 significant digits; NaN becomes null."""
    match value:
        case bool() | None | str() | int():
            return value
        case float():
            return None if math.isnan(value) else float(format(value, ".12g"))
        case Mapping():
            return {str(k): json_ready(v) for k, v in value.items()}
        case list() | tuple():
            return [json_ready(v) for v in value]
        case _:
            return json_ready(value.item()) if hasattr(value, "item") else str(value)


def render_json(results: Any, meta: Mapping[str, Any] | None = None) -> str:
    document = {"meta": {"version": package_version(), **dict(meta or {})}, "results": results}
    return json.dumps(json_ready(document), indent=2, ensure_ascii=False) + "\n"


def render_csv(header: Sequence[str], records: Sequence[Mapping[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        writer.writerow([format_cell(record.get(column)) for column in header])
    return buffer.getvalue()


def tally_records(tally: TallyMatrix) -> list[dict[str, Any]]:
    records: list[dict[str, Any]] = [
        {"kind": "summary", "name": "n_samples", "count": tally.n_samples, "fraction": None},
        {"kind": "summary", "name": "n_entangled", "count": tally.n_entangled, "fraction": tally.entangled_fraction},
        {"kind": "summary", "name": "union_entangled", "count": tally.union_entangled, "fraction": tally.union_rate},
    ]
    for name in tally.detectors:
        records.append({"kind": "detector", "name": name, "count": tally.detected_entangled[name],
                        "fraction": tally.detection_rate(name)})
    for name in tally.detectors:
        records.append({"kind": "false_positive", "name": name, "count": tally.false_positives(name), "fraction": None})
    union = tally.union_detected
    for mask, count in sorted(tally.venn.items()):
        records.append({"kind": "venn", "name": "+".join(tally.cell_names(mask)), "count": count,
                        "fraction": count / union if union else 0.0})
    return records


def optimization_records(summaries: Sequence[OptimizationSummary]) -> list[dict[str, Any]]:
    records = []
    for summary in summaries:
        head = {k: v for k, v in summary.to_dict().items() if k in OPTIMIZATION_COLUMNS}
        for k in range(len(summary.histogram_entangled)):
            records.append({
                **head,
                "bin_lo": float(summary.bin_edges[k]),
                "bin_hi": float(summary.bin_edges[k + 1]),
                "entangled": int(summary.histogram_entangled[k]),
                "separable": int(summary.histogram_separable[k]),
            })
    return records


def _tabulate(results: Results) -> tuple[Sequence[str], list[dict[str, Any]], Any]:
    match results:
        case TallyMatrix():
            return TALLY_COLUMNS, tally_records(results), results.to_dict()
        case [SweepRow(), *_]:
            rows = [row.as_record() for row in results]  # type: ignore[union-attr]
            return SWEEP_COLUMNS, rows, rows
        case [OptimizationSummary(), *_]:
            summaries = list(results)  # type: ignore[arg-type]
            return OPTIMIZATION_COLUMNS, optimization_records(summaries), [s.to_dict() for s in summaries]
        case _:
            raise ContractViolationError(f"nothing to export from {type(results).__name__}")


def render_results(results: Results, fmt: OutputFormat = "csv", *, meta: Mapping[str, Any] | None = None) -> str:
    if fmt not in _VALID_OUTPUT_FORMAT_TUPLE:
        raise ContractViolationError(f"unknown output format '{fmt}'")
    header, records, payload = _tabulate(results)
    return render_csv(header, records) if fmt == "csv" else render_json(payload, meta)


def export_results(
    results: Results,
    path: str | Path,
    fmt: OutputFormat = "csv",
    *,
    meta: Mapping[str, Any] | None = None,
) -> Path:
    """Writes results as CSV or JSON and returns the path."""
    text = render_results(results, fmt, meta=meta)
    target = Path(path)
    try:
        target.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        raise ExportError(f"cannot write {target}: {e}") from e
    logger.get_logger(__name__).info(
        "results written", domain="export", action="write", status="success",
        path=str(target), format=fmt, bytes=len(text.encode("utf-8")),
    )
    return target

# 💾✨
