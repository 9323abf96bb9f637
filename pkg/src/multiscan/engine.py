"""Shared-memory parallel counting over a partition plan.

The text lives once in memory; each pool thread gets one chunk of index
ranges, runs a matcher over it (optionally tile by tile) and writes a
single slot of the per-worker count vector. The total is summed
afterwards on the calling thread.

The scan kernels release the GIL, so pool threads run truly in parallel.
"""

from __future__ import annotations

import logging
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .aho_corasick import AcAutomaton, ac_positions, ac_search, build_automaton
from .core import PatternSet, TextLike, as_text
from .partition import Chunk, PartitionPlan, make_plan, tiles
from .wu_manber import WmParams, WmTables, wm_positions, wm_preprocess, wm_search

log = logging.getLogger(__name__)

ALGORITHMS = ("ac", "wm")


class Matcher(Protocol):
    m: int

    def count(self, text: np.ndarray, start: int, stop: int) -> int: ...

    def positions(self, text: np.ndarray, start: int, stop: int) -> list[tuple[int, int]]: ...


@dataclass(frozen=True)
class AcMatcher:
    automaton: AcAutomaton
    m: int

    @classmethod
    def from_patterns(cls, patterns: PatternSet, precompute: bool = False) -> AcMatcher:
        return cls(build_automaton(patterns, precompute=precompute), patterns.m)

    def count(self, text, start, stop):
        return ac_search(self.automaton, text, start, stop)

    def positions(self, text, start, stop):
        return ac_positions(self.automaton, text, start, stop)


@dataclass(frozen=True)
class WmMatcher:
    tables: WmTables
    m: int

    @classmethod
    def from_patterns(cls, patterns: PatternSet, params: WmParams = WmParams()) -> WmMatcher:
        return cls(wm_preprocess(patterns, params), patterns.m)

    def count(self, text, start, stop):
        return wm_search(self.tables, text, start, stop)

    def positions(self, text, start, stop):
        return wm_positions(self.tables, text, start, stop)


def make_matcher(algo: str, patterns: PatternSet, params: WmParams | None = None) -> Matcher:
    if algo == "ac":
        return AcMatcher.from_patterns(patterns)
    if algo == "wm":
        return WmMatcher.from_patterns(patterns, params or WmParams())
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


class WorkerError(RuntimeError):
    """A pool worker failed; the whole count is void."""

    def __init__(self, worker_id: int, cause: BaseException):
        super().__init__(f"worker {worker_id} failed: {cause!r}")
        self.worker_id = worker_id


@dataclass
class CountResult:
    per_worker: np.ndarray
    total: int
    plan: PartitionPlan
    positions: list[tuple[int, int]] | None = None


def scan_chunk(matcher: Matcher, text: np.ndarray, chunk: Chunk,
               tile_size: int | None = None) -> int:
    if tile_size is None:
        return matcher.count(text, chunk.base_start, chunk.scan_stop)
    return sum(matcher.count(text, t.start, t.stop) for t in tiles(chunk, tile_size, matcher.m))


def reduce_counts(per_worker: np.ndarray) -> int:
    return int(per_worker.sum(dtype=np.uint64))


class Engine:
    """A fixed pool of ``worker_count`` threads, one chunk per thread per call.

    Not reentrant: call from one thread at a time. Use as a context manager
    or call :meth:`close`.
    """

    def __init__(self, worker_count: int):
        if worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        self.worker_count = worker_count
        self._pool = ThreadPoolExecutor(max_workers=worker_count,
                                        thread_name_prefix="multiscan-worker")

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def close(self):
        self._pool.shutdown(wait=True)

    def scan(self, matcher: Matcher, text: TextLike, tile_size: int | None = None,
             plan: PartitionPlan | None = None) -> tuple[np.ndarray, PartitionPlan]:
        """Run every chunk and return the per-worker count vector (no reduction)."""
        t = as_text(text)
        if plan is None:
            plan = make_plan(t.size, matcher.m, self.worker_count)
        elif plan.worker_count != self.worker_count or plan.n != t.size:
            raise ValueError("plan does not match this engine and text")
        out = np.zeros(plan.worker_count, dtype=np.uint64)

        def work(chunk: Chunk):
            out[chunk.worker_id] = scan_chunk(matcher, t, chunk, tile_size)

        futures = [self._pool.submit(work, c) for c in plan.chunks]
        failure = None
        for chunk, fut in zip(plan.chunks, futures):
            exc = fut.exception()
            if exc is not None and failure is None:
                failure = WorkerError(chunk.worker_id, exc)
                failure.__cause__ = exc
        if failure is not None:
            log.error("%s", failure)
            raise failure
        return out, plan

    def count(self, matcher: Matcher, text: TextLike, tile_size: int | None = None,
              positions: bool = False) -> CountResult:
        per_worker, plan = self.scan(matcher, text, tile_size)
        result = CountResult(per_worker, reduce_counts(per_worker), plan)
        if positions:
            t = as_text(text)
            found = []
            for c in plan.chunks:
                found.extend(matcher.positions(t, c.base_start, c.scan_stop))
            result.positions = sorted(found)
        return result


def parallel_count(matcher: Matcher, text: TextLike, worker_count: int,
                   tile_size: int | None = None) -> tuple[np.ndarray, int]:
    """One-shot helper: ``(per_worker counts, total)`` using a temporary pool."""
    with Engine(worker_count) as eng:
        res = eng.count(matcher, text, tile_size)
    return res.per_worker, res.total


@dataclass
class TimingReport:
    algo: str
    worker_count: int
    count: int
    per_worker: np.ndarray
    samples: dict[str, list[float]] = field(default_factory=dict)

    @property
    def median(self) -> dict[str, float]:
        return {phase: statistics.median(v) for phase, v in self.samples.items()}


def warm_up() -> None:
    """Trigger JIT compilation of the scan kernels so timings exclude it."""
    ps = PatternSet([b"acg"])
    text = b"acgacg"
    AcMatcher.from_patterns(ps).count(as_text(text), 0, 6)
    WmMatcher.from_patterns(ps).count(as_text(text), 0, 6)


def timed_run(algo: str, patterns: PatternSet, text: TextLike, worker_count: int,
              repeats: int = 3, tile_size: int | None = None,
              params: WmParams | None = None) -> TimingReport:
    """Time preprocessing, search and reduction separately, ``repeats`` times each."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    warm_up()
    t = as_text(text)
    samples: dict[str, list[float]] = {"preprocess": [], "search": [], "reduce": []}
    counts = set()
    with Engine(worker_count) as eng:
        for _ in range(repeats):
            t0 = time.perf_counter()
            matcher = make_matcher(algo, patterns, params)
            t1 = time.perf_counter()
            per_worker, _ = eng.scan(matcher, t, tile_size)
            t2 = time.perf_counter()
            total = reduce_counts(per_worker)
            t3 = time.perf_counter()
            samples["preprocess"].append(t1 - t0)
            samples["search"].append(t2 - t1)
            samples["reduce"].append(t3 - t2)
            counts.add(total)
    if len(counts) != 1:
        raise RuntimeError(f"nondeterministic counts across repeats: {sorted(counts)}")
    return TimingReport(algo, worker_count, counts.pop(), per_worker, samples)
