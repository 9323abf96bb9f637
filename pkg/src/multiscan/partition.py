"""Chunk arithmetic for splitting a text across workers.

Each worker owns a *base* range ``[base_start, base_end)`` and scans
``[base_start, scan_stop)`` where ``scan_stop = min(base_end + m - 1, n)``.
A matcher that counts only matches lying wholly inside its scan range then
counts exactly the matches starting in its base range, so per-worker counts
sum to the whole-text count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

DEFAULT_TILE_SIZE = 16128


class Chunk(NamedTuple):
    worker_id: int
    base_start: int
    base_end: int
    scan_stop: int

    @property
    def scan_length(self) -> int:
        return self.scan_stop - self.base_start


class Tile(NamedTuple):
    """One streaming window: matches starting in ``[start, end)`` are found
    by scanning ``[start, stop)``."""

    start: int
    end: int
    stop: int


def base_start(worker_id: int, worker_count: int, n: int) -> int:
    return worker_id * n // worker_count


def chunk_bounds(worker_id: int, worker_count: int, n: int, m: int) -> tuple[int, int]:
    """``(start, stop)`` of one worker's scan range.

    For ``n`` divisible by ``worker_count`` this is
    ``start = rank * n / W`` and ``stop = (rank + 1) * n / W + m - 1``, clamped to ``n``.
    """
    if worker_count < 1:
        raise ValueError("worker_count must be >= 1")
    if not 0 <= worker_id < worker_count:
        raise ValueError(f"worker_id {worker_id} outside [0, {worker_count})")
    start = base_start(worker_id, worker_count, n)
    stop = min(base_start(worker_id + 1, worker_count, n) + m - 1, n)
    return start, stop


@dataclass(frozen=True)
class PartitionPlan:
    n: int
    m: int
    worker_count: int
    chunks: tuple[Chunk, ...]

    @property
    def scanned_characters(self) -> int:
        return sum(c.scan_length for c in self.chunks)

    @property
    def overlap_surplus(self) -> int:
        return self.scanned_characters - self.n


def make_plan(n: int, m: int, worker_count: int) -> PartitionPlan:
    if worker_count < 1:
        raise ValueError("worker_count must be >= 1")
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    chunks = []
    for w in range(worker_count):
        start, stop = chunk_bounds(w, worker_count, n, m)
        chunks.append(Chunk(w, start, base_start(w + 1, worker_count, n), stop))
    return PartitionPlan(n, m, worker_count, tuple(chunks))


def tiles(chunk: Chunk, tile_size: int, m: int) -> Iterator[Tile]:
    """Split a chunk into fixed-size tiles, each carrying ``m - 1`` extra characters.

    The carry never reaches past the chunk's own ``scan_stop``, so summing
    tile counts gives the chunk count.
    """
    if tile_size < m:
        raise ValueError(f"tile_size {tile_size} is smaller than pattern length {m}")
    pos = chunk.base_start
    while pos < chunk.base_end:
        end = min(pos + tile_size, chunk.base_end)
        yield Tile(pos, end, min(end + m - 1, chunk.scan_stop))
        pos = end
