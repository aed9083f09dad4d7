"""Coordinated sampling with a shared hash function and threshold.

A key ``x`` is sampled iff ``h(x) < t``. When every site uses the same
``(h, t)``, samples of different sets combine exactly: the union of samples
is the sample of the union, and likewise for intersection and symmetric
difference. With ``h`` strongly universal the sample size is a sum of
pairwise independent indicators, so ``|S| * m / t`` is an unbiased and
concentrated estimate of the set size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CoordinationError, ParameterError
from .int_hash import AffineSeed, OddSeed, multiply_add_shift, multiply_shift
from .seeding import SeedSource

DEFAULT_KEY_BITS = 32
DEFAULT_HASH_BITS = 30


@dataclass(frozen=True)
class Sampler:
    """Sample keys with ``h(key) < t``; ``h`` maps into ``[2^l]``.

    ``seed`` is normally an :class:`AffineSeed` (strongly universal). An
    :class:`OddSeed` gives universal multiply-shift, kept as a negative
    control; it then needs an explicit ``l``.
    """

    seed: AffineSeed | OddSeed
    t: int
    l: int | None = None

    def __post_init__(self):
        if isinstance(self.seed, AffineSeed):
            if self.l is None:
                object.__setattr__(self, "l", self.seed.l)
            elif self.l != self.seed.l:
                raise ParameterError("l disagrees with the seed's output bits")
        elif self.l is None or not 1 <= self.l <= self.seed.w:
            raise ParameterError("universal multiply-shift sampler needs 1 <= l <= w")
        if not 0 <= self.t <= self.m:
            raise ParameterError(f"threshold t={self.t} outside [0, {self.m}]")

    @property
    def m(self) -> int:
        return 1 << self.l

    @property
    def key_bits(self) -> int:
        return self.seed.w

    @property
    def rate(self) -> float:
        return self.t / self.m

    @classmethod
    def draw(
        cls,
        source: SeedSource,
        p: float,
        key_bits: int = DEFAULT_KEY_BITS,
        l: int = DEFAULT_HASH_BITS,
    ) -> Sampler:
        """Strongly universal sampler with ``t = round(p * 2^l)``."""
        if not 0 <= p <= 1:
            raise ParameterError(f"sampling probability {p} outside [0, 1]")
        seed = AffineSeed.draw(source, key_bits, l)
        return cls(seed, round(p * (1 << l)))

    def hash(self, keys):
        """Hash an int or a ``uint64`` array of keys."""
        s = self.seed
        if isinstance(s, AffineSeed):
            return multiply_add_shift(s.a, s.b, keys, s.wbar, s.l)
        return multiply_shift(s.a, keys, s.w, self.l)


@dataclass(frozen=True)
class Sample:
    keys: frozenset
    sampler: Sampler

    @property
    def t(self) -> int:
        return self.sampler.t

    @property
    def m(self) -> int:
        return self.sampler.m

    def __len__(self) -> int:
        return len(self.keys)


def _vectorizable(sampler: Sampler) -> bool:
    s = sampler.seed
    return s.wbar <= 64 if isinstance(s, AffineSeed) else s.w <= 64


def sample_set(sampler: Sampler, keys: Iterable[int] | np.ndarray) -> Sample:
    """``{x in keys : h(x) < t}``."""
    limit = 1 << sampler.key_bits
    if isinstance(keys, np.ndarray) and _vectorizable(sampler):
        arr = keys.astype(np.uint64, copy=False)
        if arr.size and int(arr.max()) >= limit:
            raise ParameterError(f"keys must lie in [2^{sampler.key_bits}]")
        picked = arr[sampler.hash(arr) < sampler.t]
        return Sample(frozenset(picked.tolist()), sampler)
    picked = []
    for x in keys:
        x = int(x)
        if not 0 <= x < limit:
            raise ParameterError(f"key {x} outside [2^{sampler.key_bits}]")
        if sampler.hash(x) < sampler.t:
            picked.append(x)
    return Sample(frozenset(picked), sampler)


def estimate_size(sample: Sample) -> float:
    if sample.t == 0:
        raise ParameterError("a threshold of 0 samples nothing; no estimate")
    return len(sample.keys) * sample.m / sample.t


_OPS = {
    "union": frozenset.union,
    "intersection": frozenset.intersection,
    "symmetric_difference": frozenset.symmetric_difference,
}


def combine(op: str, sa: Sample, sb: Sample) -> Sample:
    """Set operation on two samples drawn with the same sampler."""
    if sa.sampler != sb.sampler:
        raise CoordinationError("samples were drawn with different (hash, threshold)")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ParameterError(f"unknown set operation {op!r}") from None
    return Sample(fn(sa.keys, sb.keys), sa.sampler)
