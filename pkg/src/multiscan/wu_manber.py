"""Wu-Manber multi-pattern search with shift-and-add block hashing.

Blocks are exactly ``B`` characters (suffix filter) and ``B_prime``
characters (prefix filter). The hash folds ``h = (h << bitshift) + c``
over a block, so the SHIFT table needs
``sum(256 * (2**bitshift)**i for i in range(B))`` entries to be safe for
any byte input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .core import PatternSet, TextLike, as_text, check_range


@dataclass(frozen=True)
class WmParams:
    B: int = 3
    B_prime: int = 2
    bitshift: int = 2

    def __post_init__(self):
        if not 1 <= self.B_prime <= self.B:
            raise ValueError(f"need 1 <= B_prime <= B, got B={self.B}, B_prime={self.B_prime}")
        if self.bitshift < 0:
            raise ValueError("bitshift must be non-negative")


def hash_space(block: int, bitshift: int) -> int:
    """Number of distinct hash values a ``block``-byte shift-and-add hash can take."""
    return sum(256 * (1 << bitshift) ** i for i in range(block))


def hash_block(block: bytes, bitshift: int) -> int:
    if len(block) < 1:
        raise ValueError("block must hold at least one character")
    h = 0
    for c in bytes(block):
        h = (h << bitshift) + c
    return h


@dataclass(frozen=True)
class WmTables:
    """SHIFT, HASH and PREFIX tables.

    HASH is stored as bucket offsets into a flat array of pattern indices:
    bucket ``h`` is ``bucket_items[bucket_offsets[h]:bucket_offsets[h + 1]]``,
    in ascending pattern order.
    """

    shift: np.ndarray
    bucket_offsets: np.ndarray
    bucket_items: np.ndarray
    prefix: np.ndarray
    pattern_matrix: np.ndarray
    params: WmParams
    m: int
    block_visits: int

    @property
    def d(self) -> int:
        return self.prefix.size

    def bucket(self, h: int) -> np.ndarray:
        return self.bucket_items[self.bucket_offsets[h]:self.bucket_offsets[h + 1]]


def initial_shift(m: int, params: WmParams = WmParams()) -> np.ndarray:
    """SHIFT before any pattern is seen: every block may be skipped by ``m - B + 1``."""
    if m < params.B:
        raise ValueError(f"pattern length m={m} is shorter than block size B={params.B}")
    return np.full(hash_space(params.B, params.bitshift), m - params.B + 1, dtype=np.int32)


def wm_preprocess(patterns: PatternSet, params: WmParams = WmParams()) -> WmTables:
    m, B, Bp, bs = patterns.m, params.B, params.B_prime, params.bitshift
    shift = initial_shift(m, params)
    size = shift.size
    buckets: dict[int, list[int]] = {}
    prefix = np.zeros(patterns.d, dtype=np.int64)
    visits = 0
    for i, pat in enumerate(patterns):
        for q in range(m, B - 1, -1):
            visits += 1
            h = hash_block(pat[q - B:q], bs)
            shiftlen = m - q
            if shiftlen < shift[h]:
                shift[h] = shiftlen
            if shiftlen == 0:
                buckets.setdefault(h, []).append(i)
                prefix[i] = hash_block(pat[:Bp], bs)

    counts = np.zeros(size, dtype=np.int64)
    for h, items in buckets.items():
        counts[h] = len(items)
    offsets = np.zeros(size + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    items = np.empty(patterns.d, dtype=np.int32)
    for h, idx in buckets.items():
        items[offsets[h]:offsets[h + 1]] = idx

    arrays = (shift, offsets, items, prefix)
    for a in arrays:
        a.flags.writeable = False
    return WmTables(shift, offsets, items, prefix, patterns.as_array(), params, m, visits)


@numba.njit(nogil=True, cache=True)
def _scan(shift, offsets, items, prefix, pats, m, B, Bp, bitshift, text, start, stop,
          out_pos, out_pat, out_visited):
    count = 0
    k = 0
    nv = 0
    record = out_pos.size > 0
    trace = out_visited.size > 0
    i = start + m - 1
    while i < stop:
        if trace:
            out_visited[nv] = i
            nv += 1
        h = 0
        for j in range(i - B + 1, i + 1):
            h = (h << bitshift) + text[j]
        s = shift[h]
        if s > 0:
            i += s
            continue
        first = i - m + 1
        hp = 0
        for j in range(first, first + Bp):
            hp = (hp << bitshift) + text[j]
        for idx in range(offsets[h], offsets[h + 1]):
            r = items[idx]
            if prefix[r] != hp:
                continue
            ok = True
            for j in range(m):
                if pats[r, j] != text[first + j]:
                    ok = False
                    break
            if ok:
                count += 1
                if record:
                    out_pos[k] = first
                    out_pat[k] = r
                    k += 1
        i += 1
    return count, k, nv


_EMPTY = np.empty(0, dtype=np.int64)


def _run(tables: WmTables, t: np.ndarray, start: int, stop: int, pos=_EMPTY, pat=_EMPTY,
         visited=_EMPTY):
    p = tables.params
    return _scan(tables.shift, tables.bucket_offsets, tables.bucket_items, tables.prefix,
                 tables.pattern_matrix, tables.m, p.B, p.B_prime, p.bitshift, t, start, stop,
                 pos, pat, visited)


def wm_search(tables: WmTables, text: TextLike, start: int = 0, stop: int | None = None) -> int:
    """Count matches lying entirely inside ``text[start:stop]``.

    Same range contract as the Aho-Corasick search: pass ``stop`` extended
    by ``m - 1`` to count every match *starting* before the unextended stop.
    """
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    count, _, _ = _run(tables, t, start, stop)
    return int(count)


def wm_positions(tables: WmTables, text: TextLike, start: int = 0,
                 stop: int | None = None) -> list[tuple[int, int]]:
    """Sorted ``(start position, pattern index)`` pairs for matches in the range."""
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    count, _, _ = _run(tables, t, start, stop)
    slots = max(int(count), 1)
    pos = np.empty(slots, dtype=np.int64)
    pat = np.empty(slots, dtype=np.int64)
    _, k, _ = _run(tables, t, start, stop, pos, pat)
    return sorted(zip(pos[:k].tolist(), pat[:k].tolist()))


def wm_visited(tables: WmTables, text: TextLike, start: int = 0,
               stop: int | None = None) -> list[int]:
    """Window end indices the search examined, in scan order.

    Every alignment not in this list was jumped over by a SHIFT value.
    """
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    visited = np.empty(max(stop - start, 1), dtype=np.int64)
    _, _, nv = _run(tables, t, start, stop, visited=visited)
    return visited[:nv].tolist()
