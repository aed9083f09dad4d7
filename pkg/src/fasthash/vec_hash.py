"""Strongly universal hashing of vectors of w-bit coordinates.

``vector_multiply_shift`` uses one multiplication per coordinate;
``pair_multiply_shift`` handles coordinates ``(2i, 2i+1)`` with one
multiplication of ``(a_2i + x_2i+1) * (a_2i+1 + x_2i)``. The prefix variant
hashes even-length vectors of any length ``d <= D`` and uses ``a_d`` as the
additive term, so vectors of different lengths end in different seeds.

As in :mod:`fasthash.int_hash`, the kernels accept numpy ``uint64`` seed
arrays when ``wbar <= 64``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .seeding import SeedSource


def vector_multiply_shift(a: Sequence, b, x: Sequence[int], wbar: int, l: int):
    acc = b
    for ai, xi in zip(a, x):
        acc = acc + ai * xi
    return (acc & ((1 << wbar) - 1)) >> (wbar - l)


def pair_multiply_shift(a: Sequence, add, x: Sequence[int], wbar: int, l: int):
    """Pair-product sum over ``x`` plus ``add``, top ``l`` of ``wbar`` bits."""
    acc = add
    for i in range(0, len(x), 2):
        acc = acc + (a[i] + x[i + 1]) * (a[i + 1] + x[i])
    return (acc & ((1 << wbar) - 1)) >> (wbar - l)


@dataclass(frozen=True)
class VectorSeeds:
    """Multipliers ``a_0 .. a_D`` and offset ``b``, all in ``[2^wbar]``."""

    a: tuple[int, ...]
    b: int
    w: int
    l: int
    wbar: int

    def __post_init__(self):
        if self.l < 1:
            raise ParameterError("output bits must be at least 1")
        if self.wbar < self.w + self.l - 1:
            raise ParameterError(f"wbar={self.wbar} is below w+l-1")
        if self.D < 2 or self.D % 2:
            raise ParameterError(f"max dimension D={self.D} must be even and >= 2")
        limit = 1 << self.wbar
        if not all(0 <= v < limit for v in self.a) or not 0 <= self.b < limit:
            raise ParameterError(f"seeds must lie in [2^{self.wbar}]")

    @property
    def D(self) -> int:
        return len(self.a) - 1

    @classmethod
    def draw(cls, source: SeedSource, D: int, w: int = 32, l: int = 32, wbar: int = 64) -> VectorSeeds:
        *a, b = source.bits_many(wbar, D + 2)
        return cls(tuple(a), b, w, l, wbar)

    def check_vector(self, x: Sequence[int]) -> None:
        if len(x) > self.D:
            raise ParameterError(f"dimension {len(x)} exceeds D={self.D}")
        limit = 1 << self.w
        for v in x:
            if not 0 <= v < limit:
                raise ParameterError(f"coordinate {v} outside [2^{self.w}]")


def _check_even(x: Sequence[int]) -> None:
    if len(x) % 2:
        raise ParameterError(f"pair-multiply-shift needs an even dimension, got {len(x)}")


def vms_hash(seeds: VectorSeeds, x: Sequence[int]) -> int:
    """Vector multiply-shift: ``(sum a_i x_i + b)[wbar-l, wbar)``."""
    seeds.check_vector(x)
    return vector_multiply_shift(seeds.a, seeds.b, x, seeds.wbar, seeds.l)


def pms_hash(seeds: VectorSeeds, x: Sequence[int]) -> int:
    """Pair-multiply-shift with offset ``b``; ``x`` must have even length."""
    _check_even(x)
    seeds.check_vector(x)
    return pair_multiply_shift(seeds.a, seeds.b, x, seeds.wbar, seeds.l)


def prefix_pms_hash(seeds: VectorSeeds, x: Sequence[int]) -> int:
    """Pair-multiply-shift for even prefixes: the offset is ``a_d``, ``d = len(x)``.

    The empty vector hashes to the top bits of ``a_0``.
    """
    _check_even(x)
    seeds.check_vector(x)
    return pair_multiply_shift(seeds.a, seeds.a[len(x)], x, seeds.wbar, seeds.l)


def naive_vector_hash(a: Sequence[int], b: int, x: Sequence[int], w: int, l: int) -> int:
    """Vector hashing with odd multipliers and no extra word length.

    This is a negative control: it is not universal. For example
    ``(0, 0)`` and ``(2^(w-1), 2^(w-1))`` collide for every seed.
    """
    if len(a) < len(x):
        raise ParameterError("fewer multipliers than coordinates")
    if not 1 <= l <= w:
        raise ParameterError(f"output bits l={l} outside [1, {w}]")
    limit = 1 << w
    if not all(0 < v < limit and v & 1 for v in a[: len(x)]) or not 0 <= b < limit:
        raise ParameterError("multipliers must be odd w-bit values, b a w-bit value")
    if not all(0 <= v < limit for v in x):
        raise ParameterError(f"coordinates must lie in [2^{w}]")
    return vector_multiply_shift(a, b, x, w, l)
