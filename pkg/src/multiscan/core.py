"""Shared value types and the brute-force counting oracle.

A match is a ``(position, pattern index)`` pair: a pattern that appears
twice in a set counts twice at every position where it occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

TextLike = Union[bytes, bytearray, memoryview, str, np.ndarray]


def as_text(data: TextLike) -> np.ndarray:
    """Return *data* as a read-only 1-D ``uint8`` array without copying when possible."""
    if isinstance(data, np.ndarray):
        if data.dtype != np.uint8 or data.ndim != 1:
            raise TypeError("text arrays must be 1-D uint8")
        arr = data
    else:
        if isinstance(data, str):
            data = data.encode("latin-1")
        arr = np.frombuffer(data, dtype=np.uint8)
    if arr.flags.writeable:
        arr = arr.view()
        arr.flags.writeable = False
    return arr


def _as_bytes(p) -> bytes:
    if isinstance(p, str):
        return p.encode("latin-1")
    return bytes(p)


@dataclass(frozen=True)
class PatternSet:
    """An ordered dictionary of ``d`` byte patterns sharing one length ``m``."""

    patterns: tuple[bytes, ...]
    alphabet_size: int = 256

    def __init__(self, patterns: Iterable, alphabet_size: int = 256):
        pats = tuple(_as_bytes(p) for p in patterns)
        if not pats:
            raise ValueError("pattern set is empty")
        m = len(pats[0])
        if m < 1:
            raise ValueError("patterns must be non-empty")
        for i, p in enumerate(pats):
            if len(p) != m:
                raise ValueError(
                    f"pattern {i} has length {len(p)}, expected uniform length {m}"
                )
        object.__setattr__(self, "patterns", pats)
        object.__setattr__(self, "alphabet_size", alphabet_size)

    @property
    def m(self) -> int:
        return len(self.patterns[0])

    @property
    def d(self) -> int:
        return len(self.patterns)

    @property
    def size(self) -> int:
        """Total characters ``|P| = d * m``."""
        return self.d * self.m

    def __len__(self) -> int:
        return self.d

    def __iter__(self):
        return iter(self.patterns)

    def __getitem__(self, i: int) -> bytes:
        return self.patterns[i]

    def as_array(self) -> np.ndarray:
        """Patterns as a ``(d, m)`` uint8 matrix."""
        return np.frombuffer(b"".join(self.patterns), dtype=np.uint8).reshape(self.d, self.m)


def check_range(n: int, start: int, stop: int | None) -> tuple[int, int]:
    """Validate ``0 <= start <= stop <= n``; ``stop=None`` means ``n``."""
    if stop is None:
        stop = n
    if not 0 <= start <= stop <= n:
        raise ValueError(f"range [{start}, {stop}) out of bounds for text of length {n}")
    return start, stop


def naive_count(text: TextLike, patterns: PatternSet) -> int:
    """Count every (position, pattern index) occurrence by direct comparison.

    Each pattern is checked at every alignment ``0 <= p <= n - m`` one
    character column at a time. This is the reference every matcher in the
    package is tested against, so it deliberately shares no code with them.
    """
    t = as_text(text)
    n, m = t.size, patterns.m
    if n < m:
        return 0
    width = n - m + 1
    total = 0
    for pat in patterns:
        hit = t[0:width] == pat[0]
        for k in range(1, m):
            if not hit.any():
                break
            hit &= t[k:k + width] == pat[k]
        total += int(np.count_nonzero(hit))
    return total


def naive_positions(text: TextLike, patterns: PatternSet) -> list[tuple[int, int]]:
    """Sorted ``(start, pattern_index)`` pairs for every occurrence."""
    t = bytes(as_text(text))
    m = patterns.m
    out = []
    for p in range(len(t) - m + 1):
        window = t[p:p + m]
        for r, pat in enumerate(patterns):
            if window == pat:
                out.append((p, r))
    return out
