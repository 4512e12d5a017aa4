#
# sweep.py
#
"""
Parameter sweeps over the two-qubit state families.
"""

from typing import Any

from attrs import define, field, validators
import numpy as np

from pyvider.complementarity.bases import mub_set
from pyvider.complementarity.correlations import full_report
from pyvider.complementarity.criteria import (
    condprob_criterion,
    mi_criterion,
    pearson_criterion,
    ppt_oracle,
)
from pyvider.complementarity.errors import ConfigError, DegenerateObservableError, ParameterRangeError
from pyvider.complementarity.logger import logger
from pyvider.complementarity.states import get_family
from pyvider.complementarity.types import _VALID_MEASURE_TUPLE, Measure

_MEASURE_ALIASES: dict[str, Measure] = {
    "i": "I", "mi": "I", "mutual_information": "I",
    "c": "C", "pearson": "C",
    "s": "S", "condprob": "S", "conditional": "S",
}

SWEEP_COLUMNS: tuple[str, ...] = (
    "p", "I_sum", "C_sum", "S_sum",
    "mi_threshold", "pearson_threshold", "s_lower", "s_upper",
    "mi_detected", "pearson_detected", "condprob_detected", "ppt_entangled",
)


def parse_measure(name: str) -> Measure:
    if name in _VALID_MEASURE_TUPLE:
        return name  # type: ignore[return-value]
    try:
        return _MEASURE_ALIASES[name.strip().lower()]
    except KeyError:
        raise ConfigError(f"unknown measure '{name}'; use I, C or S (or mi, pearson, condprob)") from None


def parse_grid(text: str) -> tuple[float, ...]:
    """'start:stop:step' inclusive of stop, or a comma-separated list of values."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"grid '{text}' needs a positive step and stop >= start")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            values = start + step * np.arange(count)
            return tuple(float(round(v, 12)) for v in values)
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"cannot parse grid '{text}'") from None


def _measures_converter(values: Any) -> tuple[Measure, ...]:
    return tuple(parse_measure(v) for v in values)


@define(frozen=True, slots=True)
class SweepSpec:
    family: str
    p_grid: tuple[float, ...] = field(converter=lambda grid: tuple(float(p) for p in grid))
    measures: tuple[Measure, ...] = field(default=("I", "C", "S"), converter=_measures_converter)
    mub_count: int = field(default=3, validator=validators.in_((2, 3)))

    def __attrs_post_init__(self) -> None:
        family = get_family(self.family)
        lo, hi = family.parameter_range
        outside = [p for p in self.p_grid if not lo <= p <= hi]
        if outside:
            raise ParameterRangeError(f"grid values {outside[:3]} lie outside [{lo}, {hi}] for family '{self.family}'")
        if not self.p_grid:
            raise ParameterRangeError("sweep grid is empty")


@define(frozen=True, slots=True)
class SweepRow:
    p: float
    I_sum: float | None
    C_sum: float | None
    S_sum: float | None
    mi_threshold: float
    pearson_threshold: float
    s_lower: float
    s_upper: float
    mi_detected: bool | None
    pearson_detected: bool | None
    condprob_detected: bool | None
    ppt_entangled: bool

    def as_record(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in SWEEP_COLUMNS}


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per grid point with the selected measures summed over the MUB pairs."""
    family = get_family(spec.family)
    mubs = mub_set(2, spec.mub_count)
    d = mubs.dim
    rows = []
    for p in spec.p_grid:
        state = family(p)
        report = full_report(state, mubs)
        want_i, want_c, want_s = ("I" in spec.measures), ("C" in spec.measures), ("S" in spec.measures)
        pearson_detected: bool | None = None
        if want_c:
            try:
                pearson_detected = pearson_criterion(report, spec.mub_count).detected_entangled
            except DegenerateObservableError:
                pearson_detected = None
        condprob = condprob_criterion(report) if want_s else None
        rows.append(SweepRow(
            p=p,
            I_sum=report.i_sum(spec.mub_count) if want_i else None,
            C_sum=report.c_sum(spec.mub_count) if want_c else None,
            S_sum=report.s_sum(2) if want_s else None,
            mi_threshold=float(np.log2(d)),
            pearson_threshold=1.0,
            s_lower=1.0,
            s_upper=d + 1.0,
            mi_detected=mi_criterion(report).detected_entangled if want_i else None,
            pearson_detected=pearson_detected,
            condprob_detected=None if condprob is None or condprob.undefined else condprob.detected_entangled,
            ppt_entangled=ppt_oracle(state).detected_entangled,
        ))
    logger.get_logger(__name__).info(
        "sweep complete", domain="sweep", action="run", status="complete",
        family=spec.family, points=len(rows), mub_count=spec.mub_count,
    )
    return rows

# 📈✨
