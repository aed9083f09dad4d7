"""Hashing single integer keys.

Two families, each in a universal and a strongly universal flavour:

* multiply-shift: multiply modulo a power of two and keep the top bits;
* multiply-mod-prime: an affine map modulo a prime, then modulo the range.

The ``multiply_shift``/``multiply_add_shift``/``mod_prime`` kernels do no
validation and accept numpy ``uint64`` arrays as well as ints (for word
lengths up to 64, where uint64 wraparound agrees with reduction mod 2^w).
The verification harness uses that to evaluate whole seed spaces at once.
The seed-typed functions validate and are what applications call.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import mersenne
from .errors import ParameterError
from .mersenne import P89
from .seeding import SeedSource


def multiply_shift(a, x, w: int, l: int):
    """``floor((a*x mod 2^w) / 2^(w-l))``."""
    return ((a * x) & ((1 << w) - 1)) >> (w - l)


def multiply_add_shift(a, b, x, wbar: int, l: int):
    """Bits ``[wbar-l, wbar)`` of ``a*x + b``."""
    return ((a * x + b) & ((1 << wbar) - 1)) >> (wbar - l)


def mod_prime(a, b, x, m, p: int = P89):
    """``((a*x + b) mod p) mod m``.

    With ``p == P89`` the Mersenne routines are used (ints only); any other
    prime is treated as a small surrogate and computed with ``%``.
    """
    if p == P89:
        v = mersenne.m89_add(mersenne.m89_mul(a, x), b)
    else:
        v = (a * x + b) % p
    return v % m


@dataclass(frozen=True)
class OddSeed:
    """Random odd multiplier for universal multiply-shift on w-bit keys."""

    a: int
    w: int = 64

    def __post_init__(self):
        if not 1 <= self.w <= 64:
            raise ParameterError(f"word length w={self.w} outside [1, 64]")
        if not (0 < self.a < 1 << self.w and self.a & 1):
            raise ParameterError(f"multiplier must be odd and below 2^{self.w}")

    @classmethod
    def draw(cls, source: SeedSource, w: int = 64) -> OddSeed:
        return cls(source.odd(w), w)


@dataclass(frozen=True)
class AffineSeed:
    """Seeds ``(a, b)`` in ``[2^wbar]`` for strongly universal multiply-shift."""

    a: int
    b: int
    w: int
    l: int
    wbar: int

    def __post_init__(self):
        if not 1 <= self.l:
            raise ParameterError("output bits must be at least 1")
        if self.wbar < self.w + self.l - 1:
            raise ParameterError(
                f"wbar={self.wbar} is below w+l-1={self.w + self.l - 1}"
            )
        limit = 1 << self.wbar
        if not (0 <= self.a < limit and 0 <= self.b < limit):
            raise ParameterError(f"seeds must lie in [2^{self.wbar}]")

    @classmethod
    def draw(cls, source: SeedSource, w: int, l: int, wbar: int | None = None) -> AffineSeed:
        if wbar is None:
            wbar = 64 if w + l - 1 <= 64 else w + l - 1
        return cls(source.bits(wbar), source.bits(wbar), w, l, wbar)


@dataclass(frozen=True)
class PrimeAffineSeed:
    """Seeds ``(a, b)`` modulo a prime ``p`` (``P89`` unless a surrogate is given).

    ``require_nonzero_a`` selects the universal variant, where ``a`` is drawn
    from ``[1, p)``; the strongly universal variant allows ``a = 0``.
    """

    a: int
    b: int
    require_nonzero_a: bool = True
    p: int = P89

    def __post_init__(self):
        if not (0 <= self.a < self.p and 0 <= self.b < self.p):
            raise ParameterError(f"seeds must be reduced modulo {self.p}")
        if self.require_nonzero_a and self.a == 0:
            raise ParameterError("universal multiply-mod-prime needs a != 0")

    @classmethod
    def draw(cls, source: SeedSource, require_nonzero_a: bool = True, p: int = P89) -> PrimeAffineSeed:
        a = source.below(p, nonzero=require_nonzero_a)
        b = source.below(p)
        return cls(a, b, require_nonzero_a, p)


def _check_output_bits(l: int, w: int) -> None:
    if not 1 <= l <= w:
        raise ParameterError(f"output bits l={l} outside [1, {w}]")


def ms_universal(seed: OddSeed, x: int, l: int) -> int:
    """Universal multiply-shift: top ``l`` bits of ``a*x mod 2^w``.

    Collision probability for distinct keys is at most ``2/2^l``. Note
    ``x = 0`` always hashes to 0.
    """
    _check_output_bits(l, seed.w)
    if not 0 <= x < 1 << seed.w:
        raise ParameterError(f"key {x} outside [2^{seed.w}]")
    return multiply_shift(seed.a, x, seed.w, l)


def ms_strong(seed: AffineSeed, x: int) -> int:
    """Strongly universal multiply-shift: bits ``[wbar-l, wbar)`` of ``a*x + b``."""
    if not 0 <= x < 1 << seed.w:
        raise ParameterError(f"key {x} outside [2^{seed.w}]")
    return multiply_add_shift(seed.a, seed.b, x, seed.wbar, seed.l)


def mmp_universal(seed: PrimeAffineSeed, x: int, m: int) -> int:
    """``((a*x + b) mod p) mod m`` with ``a != 0``; collision probability <= 1/m."""
    if seed.a == 0:
        raise ParameterError("universal multiply-mod-prime needs a != 0")
    if not 1 <= m < seed.p:
        raise ParameterError(f"range size m={m} outside [1, p)")
    if not 0 <= x < seed.p:
        raise ParameterError("key must be below p")
    return mod_prime(seed.a, seed.b, x, m, seed.p)


def mmp_strong(seed: PrimeAffineSeed, x: int, m: int) -> int:
    """Same formula as :func:`mmp_universal` with ``a`` uniform over all of ``[p]``."""
    if not 1 <= m <= seed.p:
        raise ParameterError(f"range size m={m} outside [1, p]")
    if not 0 <= x < seed.p:
        raise ParameterError("key must be below p")
    return mod_prime(seed.a, seed.b, x, m, seed.p)
