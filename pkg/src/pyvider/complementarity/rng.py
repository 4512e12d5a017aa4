#
# rng.py
#
"""
Deterministic, splittable random streams.

A stream is named by `(seed, stream_id)`; the same pair always yields the same
sample sequence, and distinct stream ids are statistically independent, so
batch work can be partitioned across workers without sharing a generator.
"""

from attrs import define, field, validators
import numpy as np

_UINT64_MASK = (1 << 64) - 1


@define(frozen=True, slots=True)
class RngStream:
    """Named random stream; call `generator()` for a fresh numpy Generator."""
    seed: int = field(converter=int)
    stream_id: int = field(default=0, converter=int, validator=validators.ge(0))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed & _UINT64_MASK, spawn_key=(self.stream_id & _UINT64_MASK,))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, offset: int) -> "RngStream":
        """Stream `offset` places further along; chunk k of a run uses `substream(k)`."""
        return RngStream(self.seed, self.stream_id + offset)


RngLike = RngStream | np.random.Generator


def as_generator(rng: RngLike) -> np.random.Generator:
    """Accepts either a named stream or an already-running Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return rng.generator()

# 🎲🧵
