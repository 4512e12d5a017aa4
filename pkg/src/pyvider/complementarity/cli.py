#
# cli.py
#
"""
Command-line front end: `complementarity {analyze,sweep,montecarlo,lur-compare,optimize}`.

Settings resolve as defaults → `--config` file (flat `key=value`, `#`
comments) → command-line flags. Results go to stdout or `-o PATH`; logs go to
stderr. Exit codes: 0 success, 2 usage or configuration error, 3 invalid
input data.
"""

import argparse
from collections.abc import Callable, Sequence
from pathlib import Path
import sys
from typing import Any, TextIO

import attrs
from attrs import define, field, validators
import numpy as np

from pyvider.complementarity.bases import mub_set
from pyvider.complementarity.config import ComplementarityConfig
from pyvider.complementarity.core import setup_logging
from pyvider.complementarity.correlations import CorrelationReport, full_report
from pyvider.complementarity.criteria import Verdict, evaluate_all, witness_bank
from pyvider.complementarity.errors import (
    ComplementarityError,
    ConfigError,
    ContractViolationError,
    ExportError,
    InvalidDimensionError,
    MatrixParseError,
    ParameterRangeError,
    UnknownNameError,
    UnsupportedDimensionError,
)
from pyvider.complementarity.experiments.export import (
    Results,
    export_results,
    format_cell,
    package_version,
    render_json,
    render_results,
)
from pyvider.complementarity.experiments.montecarlo import (
    DEFAULT_DETECTORS,
    DEFAULT_SEED,
    run_lur_comparison,
    run_montecarlo,
)
from pyvider.complementarity.experiments.optimization import (
    DEFAULT_BINS,
    DEFAULT_DIRECTIONS,
    OptimizationSpec,
    compare_modes,
    run_basis_optimization,
)
from pyvider.complementarity.experiments.sweep import SweepSpec, parse_grid, parse_measure, run_sweep
from pyvider.complementarity.experiments.tally import TallyMatrix
from pyvider.complementarity.logger import emoji_contract_lines, logger
from pyvider.complementarity.qmat import BipartiteState
from pyvider.complementarity.rng import RngStream
from pyvider.complementarity.states import get_family, named_state
from pyvider.complementarity.types import (
    _VALID_OPTIMIZATION_MODE_TUPLE,
    _VALID_OUTPUT_FORMAT_TUPLE,
    CommandName,
    OutputFormat,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_INPUT = 3

ALL_MODES = "all"

_USAGE_ERRORS: tuple[type[Exception], ...] = (
    ConfigError,
    MatrixParseError,
    UnknownNameError,
    ParameterRangeError,
    UnsupportedDimensionError,
    InvalidDimensionError,
    ExportError,
)


def _split_names(value: Any) -> tuple[str, ...]:
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    return tuple(value)


@define(frozen=True, slots=True)
class RunConfig:
    """Resolved settings of one CLI invocation."""
    command: CommandName
    seed: int = field(default=DEFAULT_SEED, converter=int)
    n: int = field(default=10**6, converter=int, validator=validators.ge(1))
    output: Path | None = field(default=None, converter=attrs.converters.optional(Path))
    format: OutputFormat = field(default="csv", validator=validators.in_(_VALID_OUTPUT_FORMAT_TUPLE))
    state: str | None = None
    d: int = field(default=2, converter=int)
    matrix_file: Path | None = field(default=None, converter=attrs.converters.optional(Path))
    family: str = "werner"
    grid: str = "0:1:0.01"
    measures: tuple[str, ...] = field(default=("I", "C", "S"), converter=_split_names)
    mub_count: int = field(default=3, converter=int, validator=validators.ge(2))
    detectors: tuple[str, ...] = field(default=DEFAULT_DETECTORS, converter=_split_names)
    mode: str = field(default="fixed", validator=validators.in_((*_VALID_OPTIMIZATION_MODE_TUPLE, ALL_MODES)))
    directions: int = field(default=DEFAULT_DIRECTIONS, converter=int, validator=validators.ge(1))
    bins: int = field(default=DEFAULT_BINS, converter=int, validator=validators.ge(1))
    threads: int | None = field(default=None, converter=attrs.converters.optional(int))
    chunk_size: int | None = field(default=None, converter=attrs.converters.optional(int))
    json: bool = False
    pairing_opt: bool = False

    @property
    def meta(self) -> dict[str, Any]:
        """Run metadata for JSON exports; contains nothing that varies between identical runs."""
        return {"command": self.command, "seed": self.seed, "n": self.n, "chunk_size": self.chunk_size}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: '{text}'")


# Config-file keys mirror the long flags; `measure` and `mubs` map onto
# differently named fields.
_CONFIG_KEYS: dict[str, tuple[str, Callable[[str], Any]]] = {
    "seed": ("seed", int),
    "n": ("n", int),
    "output": ("output", str),
    "format": ("format", str),
    "state": ("state", str),
    "d": ("d", int),
    "matrix_file": ("matrix_file", str),
    "family": ("family", str),
    "grid": ("grid", str),
    "measure": ("measures", str),
    "mubs": ("mub_count", int),
    "detectors": ("detectors", str),
    "mode": ("mode", str),
    "directions": ("directions", int),
    "bins": ("bins", int),
    "threads": ("threads", int),
    "chunk_size": ("chunk_size", int),
    "json": ("json", _parse_bool),
    "pairing_opt": ("pairing_opt", _parse_bool),
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parses flat `key=value` lines into RunConfig field values."""
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got '{raw.strip()}'")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key '{key}'")
        field_name, convert = _CONFIG_KEYS[key]
        try:
            values[field_name] = convert(value.strip())
        except ValueError as e:
            raise ConfigError(f"{source}:{lineno}: bad value for '{key}': {e}") from None
    return values


def load_config_file(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from None
    return parse_config_text(text, str(path))


def parse_matrix_text(text: str) -> BipartiteState:
    """
    First token is the subsystem dimension d; then (d²)² entries as `re im`
    pairs in row-major order.
    """
    tokens = text.split()
    if not tokens:
        raise MatrixParseError("matrix file is empty")
    try:
        d = int(tokens[0])
    except ValueError:
        raise MatrixParseError(f"first token must be the subsystem dimension, got '{tokens[0]}'") from None
    if d < 1:
        raise MatrixParseError(f"subsystem dimension must be positive, got {d}")
    n = d * d
    expected = 2 * n * n
    numbers = tokens[1:]
    if len(numbers) != expected:
        raise MatrixParseError(f"expected {expected} numbers for a {n}x{n} complex matrix, found {len(numbers)}")
    try:
        parts = np.array([float(t) for t in numbers], dtype=np.float64).reshape(n * n, 2)
    except ValueError as e:
        raise MatrixParseError(f"cannot parse matrix entries: {e}") from None
    matrix = (parts[:, 0] + 1j * parts[:, 1]).reshape(n, n)
    return BipartiteState.from_matrix(matrix, d)


def load_matrix_file(path: str | Path) -> BipartiteState:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MatrixParseError(f"cannot read matrix file {path}: {e}") from None
    return parse_matrix_text(text)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="64-bit seed; fully determines stochastic output (default 42)")
    parser.add_argument("-o", "--output", help="write results to this path instead of stdout")
    parser.add_argument("--format", choices=_VALID_OUTPUT_FORMAT_TUPLE, help="export format (default csv)")
    parser.add_argument("--threads", type=int, help="worker threads; never changes results")
    parser.add_argument("--chunk-size", dest="chunk_size", type=int, help="samples per RNG stream")
    parser.add_argument("--config", help="key=value file; flags override it")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="complementarity",
        description="Correlations in complementary bases and the entanglement criteria built on them.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {package_version()}")
    parser.add_argument("--show-emoji-matrix", action="store_true", help="print the log emoji contract and exit")
    sub = parser.add_subparsers(dest="command")

    analyze = sub.add_parser("analyze", help="correlations and every detector verdict for one state")
    _add_common_flags(analyze)
    source = analyze.add_mutually_exclusive_group()
    source.add_argument("--state", help="catalog name, or family:p (e.g. werner:0.5)")
    source.add_argument("--matrix-file", dest="matrix_file", help="text file: d, then (d²)² 're im' pairs")
    analyze.add_argument("--d", type=int, help="subsystem dimension for catalog states (default 2)")
    analyze.add_argument("--mubs", dest="mub_count", type=int, help="number of MUB pairs (default 3)")
    analyze.add_argument("--json", action="store_true", default=None, help="print JSON instead of a table")
    analyze.add_argument("--pairing-opt", dest="pairing_opt", action="store_true", default=None,
                         help="maximise S over outcome pairings")

    sweep = sub.add_parser("sweep", help="measures and verdicts across a state family")
    _add_common_flags(sweep)
    sweep.add_argument("--family", help="werner, psi_epsilon, dotted, solid or corner")
    sweep.add_argument("--grid", help="start:stop:step (inclusive) or a comma-separated list")
    sweep.add_argument("--measure", dest="measures", action="append", help="I, C or S (repeatable)")
    sweep.add_argument("--mubs", dest="mub_count", type=int, help="MUB pairs for the I and C sums (2 or 3)")

    montecarlo = sub.add_parser("montecarlo", help="detector tallies over random two-qubit states")
    _add_common_flags(montecarlo)
    montecarlo.add_argument("--n", type=int, help="number of random states (default 10^6)")
    montecarlo.add_argument("--detectors", help=f"comma-separated detector names (default {','.join(DEFAULT_DETECTORS)})")

    lur = sub.add_parser("lur-compare", help="LUR against the two- and three-basis Pearson detectors")
    _add_common_flags(lur)
    lur.add_argument("--n", type=int, help="number of random states (default 10^6)")

    optimize = sub.add_parser("optimize", help="maximise the Pearson sum over measurement bases")
    _add_common_flags(optimize)
    optimize.add_argument("--n", type=int, help="number of random states")
    optimize.add_argument("--mode", choices=(*_VALID_OPTIMIZATION_MODE_TUPLE, ALL_MODES), help="basis search (default fixed)")
    optimize.add_argument("--directions", type=int, help="candidate directions per basis")
    optimize.add_argument("--bins", type=int, help="histogram bins")
    return parser


_FLAG_FIELDS: tuple[str, ...] = (
    "seed", "output", "format", "threads", "chunk_size", "state", "matrix_file", "d", "mub_count",
    "json", "pairing_opt", "family", "grid", "measures", "n", "detectors", "mode", "directions", "bins",
)


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    values: dict[str, Any] = load_config_file(args.config) if getattr(args, "config", None) else {}
    for name in _FLAG_FIELDS:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    try:
        return RunConfig(command=args.command, **values)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid settings: {e}") from None


def _configure_logging(verbosity: int) -> None:
    config = ComplementarityConfig.from_env()
    if verbosity:
        level = "DEBUG" if verbosity > 1 else "INFO"
        config = attrs.evolve(config, logging=attrs.evolve(config.logging, default_level=level))
    setup_logging(config)


def _select_state(cfg: RunConfig) -> tuple[str, BipartiteState]:
    if cfg.matrix_file is not None:
        return str(cfg.matrix_file), load_matrix_file(cfg.matrix_file)
    name = cfg.state or "phi_plus"
    if ":" in name:
        family_name, _, raw_p = name.partition(":")
        try:
            p = float(raw_p)
        except ValueError:
            raise ConfigError(f"cannot parse family parameter in '{name}'") from None
        return name, get_family(family_name)(p)
    return name, named_state(name, cfg.d)


def _verdict_label(v: Verdict) -> str:
    if v.undefined:
        return "undefined"
    return "entangled" if v.detected_entangled else "-"


def _report_table(label: str, report: CorrelationReport, verdicts: Sequence[Verdict]) -> str:
    top = report.top_two_i()
    lines = [
        f"state: {label} (d={report.d}, {report.n_pairs} MUB pairs)",
        f"{'pair':<6}{'I':>14}{'|C|':>14}{'S':>14}",
    ]
    for pair in report.pairs:
        lines.append(f"{pair.index:<6}{format_cell(pair.I):>14}{format_cell(pair.abs_C):>14}{format_cell(pair.S):>14}")
    lines.append(
        f"I_sum={format_cell(top[0] + top[1])} C_sum={format_cell(report.c_sum())} S_sum={format_cell(report.s_sum(2))}"
    )
    lines.append(f"{'detector':<18}{'value':>14}{'threshold':>14}{'margin':>14}  verdict")
    for v in verdicts:
        lines.append(
            f"{v.detector:<18}{format_cell(v.value):>14}{format_cell(v.threshold):>14}{format_cell(v.margin):>14}  {_verdict_label(v)}"
        )
    return "\n".join(lines) + "\n"


def _verdict_record(v: Verdict) -> dict[str, Any]:
    return attrs.asdict(v)


def cmd_analyze(cfg: RunConfig, out: TextIO) -> int:
    label, state = _select_state(cfg)
    mubs = mub_set(state.d, cfg.mub_count)
    report = full_report(state, mubs, optimize_pairing=cfg.pairing_opt)
    verdicts = evaluate_all(state, report)
    if state.d == 2:
        verdicts.extend(witness_bank(state))
    if cfg.json:
        top = report.top_two_i()
        out.write(render_json({
            "state": label,
            "d": report.d,
            "pairs": [attrs.asdict(p, filter=lambda a, _: a.name != "C") for p in report.pairs],
            "I_sum": top[0] + top[1],
            "C_sum": report.c_sum(),
            "S_sum": report.s_sum(2),
            "verdicts": [_verdict_record(v) for v in verdicts],
        }, {"command": cfg.command}))
    else:
        out.write(_report_table(label, report, verdicts))
    return EXIT_OK


def _summary_line(cfg: RunConfig, results: Results) -> str:
    match results:
        case TallyMatrix():
            parts = [f"entangled_fraction={format_cell(results.entangled_fraction)}"]
            parts += [f"{name}={format_cell(results.detection_rate(name))}" for name in results.detectors]
            parts.append(f"union={format_cell(results.union_rate)}")
        case [first, *_] if hasattr(first, "detected_fraction"):
            parts = [f"{s.mode}={format_cell(s.detected_fraction)}" for s in results]  # type: ignore[union-attr]
        case _:
            parts = [f"rows={len(results)}"]  # type: ignore[arg-type]
    return f"{cfg.command} " + " ".join(parts)


def _emit(cfg: RunConfig, results: Results, out: TextIO) -> int:
    if cfg.output is None:
        out.write(render_results(results, cfg.format, meta=cfg.meta))
        print(_summary_line(cfg, results), file=sys.stderr)
    else:
        export_results(results, cfg.output, cfg.format, meta=cfg.meta)
        print(_summary_line(cfg, results), file=out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out: TextIO) -> int:
    spec = SweepSpec(
        family=cfg.family,
        p_grid=parse_grid(cfg.grid),
        measures=tuple(parse_measure(m) for m in cfg.measures),
        mub_count=cfg.mub_count,
    )
    return _emit(cfg, run_sweep(spec), out)


def cmd_montecarlo(cfg: RunConfig, out: TextIO) -> int:
    tally = run_montecarlo(cfg.n, cfg.detectors, RngStream(cfg.seed), threads=cfg.threads, chunk_size=cfg.chunk_size)
    return _emit(cfg, tally, out)


def cmd_lur(cfg: RunConfig, out: TextIO) -> int:
    tally = run_lur_comparison(cfg.n, RngStream(cfg.seed), threads=cfg.threads, chunk_size=cfg.chunk_size)
    return _emit(cfg, tally, out)


def cmd_optimize(cfg: RunConfig, out: TextIO) -> int:
    stream = RngStream(cfg.seed)
    if cfg.mode == ALL_MODES:
        summaries = compare_modes(cfg.n, cfg.directions, _VALID_OPTIMIZATION_MODE_TUPLE, stream, cfg.bins)
    else:
        summaries = [run_basis_optimization(OptimizationSpec(cfg.n, cfg.directions, cfg.mode, stream, cfg.bins))]  # type: ignore[arg-type]
    return _emit(cfg, summaries, out)


_COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "montecarlo": cmd_montecarlo,
    "lur-compare": cmd_lur,
    "optimize": cmd_optimize,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    stdout = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.show_emoji_matrix:
        stdout.write("\n".join(emoji_contract_lines()) + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.verbose)
    log = logger.get_logger(__name__)
    try:
        cfg = resolve_run_config(args)
        log.debug("run configuration resolved", domain="cli", action="parse", status="success",
                  command=cfg.command, seed=cfg.seed)
        return _COMMANDS[cfg.command](cfg, stdout)
    except _USAGE_ERRORS as e:
        log.error("invalid usage", domain="cli", action="validate", status="failure", error=str(e))
        print(f"complementarity: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolationError as e:
        log.error("invalid input data", domain="cli", action="validate", status="failure", error=str(e))
        print(f"complementarity: invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ValueError as e:
        # attrs validators on run settings
        log.error("invalid settings", domain="cli", action="validate", status="failure", error=str(e))
        print(f"complementarity: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ComplementarityError as e:
        log.error("run failed", domain="cli", action="run", status="failure", error=str(e))
        print(f"complementarity: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

# ⌨️🧪
