"""Arithmetic modulo the Mersenne prime p = 2^89 - 1.

Residues are plain ints kept fully reduced (``0 <= v < P89``) after every
operation, so equal residues compare equal bitwise. Reduction uses the
Mersenne identity ``x = (x mod 2^89) + floor(x / 2^89)  (mod p)`` instead of a
general division.
"""

from __future__ import annotations

import contextlib
from collections import Counter
from typing import Iterator

Q = 89
P89 = (1 << Q) - 1

M89 = int
"""A residue modulo ``P89``; always in ``[0, P89)``."""


def m89_reduce(x: int) -> M89:
    """Reduce ``0 <= x < 2^178`` modulo ``P89``.

    Two folds of the high bits onto the low bits take ``x`` below
    ``2^89 + 2``; one conditional subtraction then makes it canonical.
    """
    x = (x & P89) + (x >> Q)
    x = (x & P89) + (x >> Q)
    if x >= P89:
        x -= P89
    return x


def m89_add(a: M89, b: M89) -> M89:
    s = a + b
    if s >= P89:
        s -= P89
    return s


def m89_mul(a: M89, b: M89) -> M89:
    # The full 178-bit product is exact with Python ints.
    return m89_reduce(a * b)


def m89_horner_step(h: M89, a: M89, x: M89) -> M89:
    """One Horner step: ``(a*h + x) mod p``."""
    return m89_reduce(a * h + x)


def to_m89(x: int) -> M89:
    """Canonical residue of an arbitrary non-negative int."""
    if x < 0:
        raise ValueError("negative value has no M89 representation here")
    if x >> (2 * Q) == 0:
        return m89_reduce(x)
    return x % P89


@contextlib.contextmanager
def count_ops() -> Iterator[Counter]:
    """Count field multiplications performed inside the block.

    Wraps the module-level multiply and Horner step; callers that reach them
    through the module (as the hashing code does) are counted. Not
    thread-safe; meant for benchmarks.
    """
    counts: Counter = Counter()
    g = globals()
    mul, step = g["m89_mul"], g["m89_horner_step"]

    def counted_mul(a, b):
        counts["mul"] += 1
        return mul(a, b)

    def counted_step(h, a, x):
        counts["mul"] += 1
        return step(h, a, x)

    g["m89_mul"], g["m89_horner_step"] = counted_mul, counted_step
    try:
        yield counts
    finally:
        g["m89_mul"], g["m89_horner_step"] = mul, step
