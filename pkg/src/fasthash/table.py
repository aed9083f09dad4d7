"""Hash table with chaining, storing either full keys or 64-bit signatures.

In key mode chain ``i`` holds the keys ``x`` with ``h(x) = i`` where ``h`` is
a strongly universal string hash. In signature mode each key is replaced by
a signature ``s(x)`` from an independent string hash, and chain ``i`` holds
the signatures with ``g(s(x)) = i`` for a strongly universal multiply-shift
``g``. Bucketing on the signature is what lets the table rehash on growth
without having kept the keys. A lookup of an absent key is a false positive
only if its signature equals a stored one.

The table starts with 256 chains and doubles (redrawing its bucket hash)
when the count reaches half the number of chains.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ParameterError
from .int_hash import AffineSeed, multiply_add_shift
from .seeding import SeedSource
from .string_hash import StringSeeds, hash_string

INITIAL_BITS = 8


class ChainTable:
    def __init__(
        self,
        source: SeedSource,
        mode: str = "key",
        sig_bits: int = 64,
        initial_bits: int = INITIAL_BITS,
        grow: bool = True,
    ):
        if mode not in ("key", "signature"):
            raise ParameterError(f"unknown storage mode {mode!r}")
        if not 1 <= initial_bits <= 63:
            raise ParameterError("initial_bits must lie in [1, 63]")
        self.source = source
        self.mode = mode
        self.grow = grow
        self.bits = initial_bits
        self.count = 0
        self.probes = 0
        self.hash_sum = 0
        self.rehashes = 0
        if mode == "signature":
            self.sig_seeds = StringSeeds.draw(source, sig_bits)
        self._draw_bucket_hash()
        self.chains: list[list] = [[] for _ in range(self.m)]

    @property
    def m(self) -> int:
        return 1 << self.bits

    @property
    def load(self) -> float:
        return self.count / self.m

    def _draw_bucket_hash(self) -> None:
        if self.mode == "key":
            self._key_seeds = StringSeeds.draw(self.source, self.bits)
        else:
            w = self.sig_seeds.bits
            self._sig_bucket = AffineSeed.draw(self.source, w, self.bits, w + self.bits - 1)

    def signature(self, key: bytes) -> int:
        s = hash_string(self.sig_seeds, key)
        self.hash_sum += s
        return s

    def bucket_of(self, entry) -> int:
        """Chain index of a stored entry (a key, or a signature in signature mode)."""
        if self.mode == "key":
            i = hash_string(self._key_seeds, entry)
        else:
            g = self._sig_bucket
            i = multiply_add_shift(g.a, g.b, entry, g.wbar, g.l)
        self.hash_sum += i
        return i

    def _locate(self, key: bytes) -> tuple[list, object]:
        entry = key if self.mode == "key" else self.signature(key)
        return self.chains[self.bucket_of(entry)], entry

    def insert(self, key: bytes) -> bool:
        """Add ``key``; return False if it (or its signature) was already present."""
        chain, entry = self._locate(key)
        self.probes += len(chain)
        if entry in chain:
            return False
        chain.append(entry)
        self.count += 1
        if self.grow and self.count >= self.m // 2:
            self._rehash(self.bits + 1)
        return True

    def contains(self, key: bytes) -> bool:
        chain, entry = self._locate(key)
        self.probes += len(chain)
        return entry in chain

    __contains__ = contains

    def chain_length(self, key: bytes) -> int:
        """Length of the chain ``key`` would be looked up in."""
        return len(self._locate(key)[0])

    def _rehash(self, bits: int) -> None:
        entries = list(self)
        self.bits = bits
        self._draw_bucket_hash()
        self.chains = [[] for _ in range(self.m)]
        for e in entries:
            self.chains[self.bucket_of(e)].append(e)
        self.rehashes += 1

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator:
        for chain in self.chains:
            yield from chain


def distinct_count(keys: Iterable[bytes], source: SeedSource, mode: str = "signature", **kwargs) -> int:
    table = ChainTable(source, mode=mode, **kwargs)
    for key in keys:
        table.insert(key)
    return len(table)
