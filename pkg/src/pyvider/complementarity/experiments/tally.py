#
# tally.py
#
"""
Contingency counts of detector verdicts against the PPT oracle.

Venn cells are keyed by a bitmask over the detector tuple (bit k set ⇔
detector k fired) and cover every sample flagged by at least one detector.
"""

from typing import Any

from attrs import define, field
import numpy as np
import numpy.typing as npt

from pyvider.complementarity.errors import ContractViolationError, DimensionMismatchError, UnknownNameError


def _frozen_counts(counts: Any) -> dict[Any, int]:
    return {key: int(value) for key, value in dict(counts).items()}


@define(frozen=True, slots=True)
class TallyMatrix:
    detectors: tuple[str, ...] = field(converter=tuple)
    n_samples: int = 0
    n_entangled: int = 0
    detected: dict[str, int] = field(factory=dict, converter=_frozen_counts)
    detected_entangled: dict[str, int] = field(factory=dict, converter=_frozen_counts)
    venn: dict[int, int] = field(factory=dict, converter=_frozen_counts)
    union_entangled: int = 0

    @classmethod
    def empty(cls, detectors: tuple[str, ...]) -> "TallyMatrix":
        zeros = dict.fromkeys(detectors, 0)
        return cls(detectors, 0, 0, zeros, zeros, {}, 0)

    @classmethod
    def from_masks(cls, detectors: tuple[str, ...], entangled: npt.NDArray[np.bool_], hits: npt.NDArray[np.bool_]) -> "TallyMatrix":
        """`hits` has one column per detector, one row per sample."""
        n = int(entangled.shape[0])
        if hits.shape != (n, len(detectors)):
            raise DimensionMismatchError(f"hits shape {hits.shape} does not match ({n}, {len(detectors)})")
        weights = (1 << np.arange(len(detectors), dtype=np.int64))
        masks = hits.astype(np.int64) @ weights if detectors else np.zeros(n, dtype=np.int64)
        cells, counts = np.unique(masks[masks > 0], return_counts=True)
        return cls(
            detectors=detectors,
            n_samples=n,
            n_entangled=int(entangled.sum()),
            detected={name: int(hits[:, k].sum()) for k, name in enumerate(detectors)},
            detected_entangled={name: int((hits[:, k] & entangled).sum()) for k, name in enumerate(detectors)},
            venn={int(c): int(k) for c, k in zip(cells, counts, strict=True)},
            union_entangled=int((entangled & (masks > 0)).sum()),
        )

    def merge(self, other: "TallyMatrix") -> "TallyMatrix":
        if self.detectors != other.detectors:
            raise ContractViolationError(f"cannot merge tallies over {self.detectors} and {other.detectors}")
        venn = dict(self.venn)
        for cell, count in other.venn.items():
            venn[cell] = venn.get(cell, 0) + count
        return TallyMatrix(
            detectors=self.detectors,
            n_samples=self.n_samples + other.n_samples,
            n_entangled=self.n_entangled + other.n_entangled,
            detected={k: self.detected.get(k, 0) + other.detected.get(k, 0) for k in self.detectors},
            detected_entangled={k: self.detected_entangled.get(k, 0) + other.detected_entangled.get(k, 0) for k in self.detectors},
            venn=dict(sorted(venn.items())),
            union_entangled=self.union_entangled + other.union_entangled,
        )

    __add__ = merge

    @property
    def union_detected(self) -> int:
        return sum(self.venn.values())

    @property
    def entangled_fraction(self) -> float:
        return self.n_entangled / self.n_samples if self.n_samples else 0.0

    def false_positives(self, name: str) -> int:
        """Samples a detector flags although the oracle says PPT (separable for two qubits)."""
        return self.detected[name] - self.detected_entangled[name]

    def detection_rate(self, name: str) -> float:
        """Fraction of oracle-entangled samples the detector flags."""
        return self.detected_entangled[name] / self.n_entangled if self.n_entangled else 0.0

    @property
    def union_rate(self) -> float:
        return self.union_entangled / self.n_entangled if self.n_entangled else 0.0

    def cell_names(self, mask: int) -> tuple[str, ...]:
        return tuple(name for k, name in enumerate(self.detectors) if mask >> k & 1)

    def mask_of(self, names: tuple[str, ...] | list[str]) -> int:
        unknown = [n for n in names if n not in self.detectors]
        if unknown:
            raise UnknownNameError(f"{unknown} not among the tallied detectors {self.detectors}")
        return sum(1 << self.detectors.index(n) for n in names)

    def venn_count(self, names: tuple[str, ...] | list[str]) -> int:
        """Samples flagged by exactly this subset of detectors."""
        return self.venn.get(self.mask_of(names), 0)

    def venn_fraction(self, names: tuple[str, ...] | list[str]) -> float:
        """Share of all flagged samples that fall in exactly this subset."""
        total = self.union_detected
        return self.venn_count(names) / total if total else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "detectors": list(self.detectors),
            "n_samples": self.n_samples,
            "n_entangled": self.n_entangled,
            "entangled_fraction": self.entangled_fraction,
            "detected": dict(self.detected),
            "detected_entangled": dict(self.detected_entangled),
            "detection_rate": {name: self.detection_rate(name) for name in self.detectors},
            "false_positives": {name: self.false_positives(name) for name in self.detectors},
            "union_detected": self.union_detected,
            "union_entangled": self.union_entangled,
            "union_rate": self.union_rate,
            "venn": {
                str(mask): {"detectors": list(self.cell_names(mask)), "count": count}
                for mask, count in sorted(self.venn.items())
            },
        }

# 🧮📊
