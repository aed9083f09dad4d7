"""Reproducible seed material.

All hash seeds are drawn through a :class:`SeedSource`. In fixed mode the
stream comes from SplitMix64 and is identical on every platform. A recording
source keeps every value it hands out so they can be written as a seed file
(lowercase hex, one value per line) and replayed with :meth:`SeedSource.from_file`.
"""

from __future__ import annotations

import secrets
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParameterError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; return ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class SeedSource:
    """Stream of seed values, either generated or replayed from a file.

    With ``record=True`` every value handed out is appended to ``drawn``.
    """

    def __init__(self, state: int = 0, replay: Sequence[int] | None = None, record: bool = False):
        self.initial_state = state & MASK64
        self._state = self.initial_state
        self._replay = list(replay) if replay is not None else None
        self._pos = 0
        self.record = record
        self.drawn: list[int] = []

    @classmethod
    def fixed(cls, seed: int, record: bool = False) -> SeedSource:
        return cls(seed, record=record)

    @classmethod
    def entropy(cls, record: bool = False) -> SeedSource:
        return cls(secrets.randbits(64), record=record)

    @classmethod
    def from_values(cls, values: Iterable[int], record: bool = False) -> SeedSource:
        return cls(replay=list(values), record=record)

    @classmethod
    def from_file(cls, path: str | Path, record: bool = False) -> SeedSource:
        return cls.from_values(load_seeds(Path(path).read_text()), record=record)

    @property
    def replaying(self) -> bool:
        return self._replay is not None

    def next_u64(self) -> int:
        self._state, out = splitmix64(self._state)
        return out

    def _raw_bits(self, k: int) -> int:
        v = 0
        for _ in range(-(-k // 64)):
            v = (v << 64) | self.next_u64()
        return v & ((1 << k) - 1)

    def _replayed(self, ok: bool, v: int, what: str) -> int:
        if not ok:
            raise ParameterError(f"replayed seed {v:#x} is not a valid {what}")
        return v

    def _next_replayed(self, what: str) -> int:
        if self._pos >= len(self._replay):
            raise ParameterError(f"seed file exhausted while drawing {what}")
        v = self._replay[self._pos]
        self._pos += 1
        return v

    def _emit(self, v: int) -> int:
        if self.record:
            self.drawn.append(v)
        return v

    def bits(self, k: int) -> int:
        """Uniform value in ``[2^k]``."""
        if k < 1:
            raise ParameterError("bit count must be positive")
        if self._replay is None:
            return self._emit(self._raw_bits(k))
        v = self._next_replayed(f"{k}-bit value")
        return self._emit(self._replayed(0 <= v < 1 << k, v, f"{k}-bit value"))

    def bits_many(self, k: int, n: int) -> list[int]:
        """``n`` values from :meth:`bits`, without the per-call overhead."""
        if self._replay is not None or k > 64:
            return [self.bits(k) for _ in range(n)]
        if k < 1:
            raise ParameterError("bit count must be positive")
        mask = (1 << k) - 1
        state = self._state
        out = []
        for _ in range(n):
            state = (state + GOLDEN_GAMMA) & MASK64
            z = state
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
            out.append((z ^ (z >> 31)) & mask)
        self._state = state
        if self.record:
            self.drawn.extend(out)
        return out

    def odd(self, k: int) -> int:
        """Uniform odd value in ``[2^k]``."""
        if k < 1:
            raise ParameterError("bit count must be positive")
        if self._replay is None:
            return self._emit(self._raw_bits(k) | 1)
        v = self._next_replayed(f"odd {k}-bit value")
        return self._emit(self._replayed(0 <= v < 1 << k and v & 1 == 1, v, f"odd {k}-bit value"))

    def below(self, n: int, nonzero: bool = False) -> int:
        """Uniform value in ``[n]`` (or ``[1, n)``), by rejection on ``bit_length(n)`` bits."""
        lo = 1 if nonzero else 0
        if n <= lo:
            raise ParameterError(f"empty range [{lo}, {n})")
        if self._replay is not None:
            v = self._next_replayed(f"value in [{lo}, {n})")
            return self._emit(self._replayed(lo <= v < n, v, f"value in [{lo}, {n})"))
        k = n.bit_length()
        while True:
            v = self._raw_bits(k)
            if lo <= v < n:
                return self._emit(v)


def dump_seeds(values: Iterable[int]) -> str:
    return "".join(f"{v:x}\n" for v in values)


def load_seeds(text: str) -> list[int]:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line, 16))
        except ValueError:
            raise ParameterError(f"seed file line {lineno}: not a hex value: {line!r}") from None
    return values
