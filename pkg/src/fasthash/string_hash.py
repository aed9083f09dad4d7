"""String hashing.

Short strings (nil-free, at most 256 bytes) are packed little-endian into
64-bit words, viewed as 32-bit coordinates and hashed with prefix
pair-multiply-shift. Everything else goes through a polynomial over
``GF(2^89 - 1)`` evaluated with Horner's rule. To make the slow field
multiplications rare, long inputs are first cut into 256-byte chunks and each
chunk is reduced to one 64-bit character by two independent 32-bit
pair-multiply-shift hashes.

Byte order is fixed (little-endian words, low 32 bits first) so hash values
are the same on every platform.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Sequence

from . import mersenne
from .errors import InputError, ParameterError
from .int_hash import mod_prime
from .mersenne import P89
from .seeding import SeedSource
from .vec_hash import VectorSeeds, pair_multiply_shift, prefix_pms_hash

MAX_BOUNDED_BYTES = 256
CHUNK_BYTES = 256
BOUNDED_COORDS = 2 * MAX_BOUNDED_BYTES // 8
# A chunk is its 64 payload coordinates plus one (byte count, 0) pair, so
# chunks that differ only in trailing zero bytes still differ.
CHUNK_COORDS = 2 * CHUNK_BYTES // 8 + 2

MASK32 = (1 << 32) - 1


@dataclass(frozen=True)
class PackedString:
    """A nil-free string packed into 64-bit little-endian words."""

    words: tuple[int, ...]
    byte_len: int

    @property
    def coord_count(self) -> int:
        return 2 * len(self.words)

    @property
    def coords(self) -> tuple[int, ...]:
        out = []
        for word in self.words:
            out.append(word & MASK32)
            out.append(word >> 32)
        return tuple(out)


def coords32(data: bytes) -> tuple[int, ...]:
    n = -(-len(data) // 8)
    return struct.unpack(f"<{2 * n}I", data.ljust(8 * n, b"\0"))


def bytes_to_words(data: bytes) -> tuple[int, ...]:
    """64-bit little-endian words of ``data``, the last one zero-padded."""
    n = -(-len(data) // 8)
    return struct.unpack(f"<{n}Q", data.ljust(8 * n, b"\0"))


def pack_string(data: bytes) -> PackedString:
    if b"\0" in data:
        raise InputError("bounded string hashing needs nil-free input")
    if len(data) > MAX_BOUNDED_BYTES:
        raise InputError(
            f"{len(data)} bytes exceeds the {MAX_BOUNDED_BYTES}-byte bounded path"
        )
    return PackedString(bytes_to_words(data), len(data))


def _check_bounded_seeds(seeds: VectorSeeds) -> None:
    if seeds.w != 32 or seeds.wbar != 64:
        raise ParameterError("bounded string hashing uses w=32, wbar=64 seeds")


def bounded_hash(seeds: VectorSeeds, x: PackedString) -> int:
    _check_bounded_seeds(seeds)
    return prefix_pms_hash(seeds, x.coords)


def poly_hash(a, chars: Sequence[int], p: int = P89):
    """Evaluate ``sum x_(d-i) a^i mod p`` by Horner's rule.

    Sequences that differ only by leading zero characters evaluate to the
    same polynomial; callers that need injectivity across lengths must rule
    that out (the chunked hash never feeds such pairs except with the
    reducer's collision probability).
    """
    if len(chars) == 0:
        raise InputError("polynomial hashing needs at least one character")
    for x in chars:
        if not 0 <= x < p:
            raise ParameterError(f"character {x} is not below p")
    h = chars[0]
    if p == P89:
        step = mersenne.m89_horner_step
        for x in chars[1:]:
            h = step(h, a, x)
        return h
    for x in chars[1:]:
        h = (a * h + x) % p
    return h


@dataclass(frozen=True)
class PolySeeds:
    """Outer affine seeds ``a, b`` and evaluation point ``c``, all in ``[p]``."""

    a: int
    b: int
    c: int
    m: int
    p: int = P89

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError("range size must be at least 1")
        if not all(0 <= v < self.p for v in (self.a, self.b, self.c)):
            raise ParameterError(f"seeds must be reduced modulo {self.p}")

    @classmethod
    def draw(cls, source: SeedSource, m: int, p: int = P89) -> PolySeeds:
        return cls(source.below(p), source.below(p), source.below(p), m, p)


def poly_hash_composed(seeds: PolySeeds, chars: Sequence[int]) -> int:
    """``((a * P_c(chars) + b) mod p) mod m``.

    For strings of length at most ``p/m`` the collision probability is at
    most ``2/m``.
    """
    inner = poly_hash(seeds.c, chars, seeds.p)
    return mod_prime(seeds.a, seeds.b, inner, seeds.m, seeds.p)


@dataclass(frozen=True)
class ChunkedSeeds:
    r1: VectorSeeds
    r2: VectorSeeds
    poly: PolySeeds

    def __post_init__(self):
        for r in (self.r1, self.r2):
            if (r.w, r.l, r.wbar) != (32, 32, 64) or r.D < CHUNK_COORDS:
                raise ParameterError(
                    f"chunk reducers need w=32, l=32, wbar=64 and D >= {CHUNK_COORDS}"
                )

    @classmethod
    def draw(cls, source: SeedSource, m: int) -> ChunkedSeeds:
        r1 = VectorSeeds.draw(source, CHUNK_COORDS)
        r2 = VectorSeeds.draw(source, CHUNK_COORDS)
        return cls(r1, r2, PolySeeds.draw(source, m))


def chunk_reduce(seeds: ChunkedSeeds, chunk: bytes) -> int:
    """Reduce one chunk of at most 256 bytes to a 64-bit value ``r1 || r2``."""
    coords = coords32(chunk) + (len(chunk), 0)
    hi = pair_multiply_shift(seeds.r1.a, seeds.r1.a[len(coords)], coords, 64, 32)
    lo = pair_multiply_shift(seeds.r2.a, seeds.r2.a[len(coords)], coords, 64, 32)
    return (hi << 32) | lo


def reduced_string(seeds: ChunkedSeeds, data: bytes) -> list[int]:
    """The sequence of reduced chunks; the empty input gives one empty chunk."""
    return [
        chunk_reduce(seeds, data[i : i + CHUNK_BYTES])
        for i in range(0, max(len(data), 1), CHUNK_BYTES)
    ]


def chunked_hash(seeds: ChunkedSeeds, data: bytes) -> int:
    return poly_hash_composed(seeds.poly, reduced_string(seeds, data))


def uses_bounded_path(byte_len: int, contains_nil: bool) -> bool:
    return byte_len <= MAX_BOUNDED_BYTES and not contains_nil


@dataclass(frozen=True)
class StringSeeds:
    """Seeds for :func:`hash_string`: two bounded hashes and a chunked hash.

    The output range is ``[2^bits]``. Short strings take the top ``bits`` of
    the concatenated 32-bit bounded hashes; long strings use the chunked hash
    with ``m = 2^bits``.
    """

    hi: VectorSeeds
    lo: VectorSeeds
    chunked: ChunkedSeeds
    bits: int

    def __post_init__(self):
        if not 1 <= self.bits <= 64:
            raise ParameterError(f"bits={self.bits} outside [1, 64]")
        for r in (self.hi, self.lo):
            _check_bounded_seeds(r)
            if r.l != 32 or r.D < BOUNDED_COORDS:
                raise ParameterError("bounded seeds need l=32 and D >= 64")
        if self.chunked.poly.m != 1 << self.bits:
            raise ParameterError("chunked range must be 2^bits")

    @classmethod
    def draw(cls, source: SeedSource, bits: int = 64) -> StringSeeds:
        hi = VectorSeeds.draw(source, BOUNDED_COORDS)
        lo = VectorSeeds.draw(source, BOUNDED_COORDS)
        return cls(hi, lo, ChunkedSeeds.draw(source, 1 << bits), bits)


def hash_string(seeds: StringSeeds, data: bytes) -> int:
    """Hash any byte string into ``[2^bits]``, picking the faster path when allowed."""
    if uses_bounded_path(len(data), b"\0" in data):
        coords = coords32(data)
        d = len(coords)
        hi = pair_multiply_shift(seeds.hi.a, seeds.hi.a[d], coords, 64, 32)
        lo = pair_multiply_shift(seeds.lo.a, seeds.lo.a[d], coords, 64, 32)
        return ((hi << 32) | lo) >> (64 - seeds.bits)
    return chunked_hash(seeds.chunked, data)
