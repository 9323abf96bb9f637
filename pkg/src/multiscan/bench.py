"""Benchmark grid: per-phase median timings and speedups over worker counts."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import asdict, dataclass

from .core import TextLike, as_text
from .engine import timed_run
from .ingest import generate_patterns

log = logging.getLogger(__name__)

PHASES = ("preprocess", "search", "reduce")
CSV_FIELDS = ("algo", "d", "m", "workers", "phase", "median_seconds", "count",
              "speedup_vs_1worker")

# observed AC-over-WM speed ratios on the original GPU cluster, by pattern-set size
REFERENCE_AC_WM_RATIO = {1000: 1.49, 8000: 5.05, 16000: 7.97}


@dataclass
class BenchRow:
    algo: str
    d: int
    m: int
    workers: int
    phase: str
    median_seconds: float
    count: int
    speedup_vs_1worker: float


def run_bench(text: TextLike, pattern_sizes=(8,), set_sizes=(1000, 8000, 16000),
              workers=(1, 2, 4), repeats: int = 3, algos=("ac", "wm"), seed: int = 0,
              tile_size: int | None = None) -> list[BenchRow]:
    t = as_text(text)
    worker_list = sorted(set(workers) | {1})
    rows = []
    for m in pattern_sizes:
        for d in set_sizes:
            patterns = generate_patterns(t, d, m, seed)
            for algo in algos:
                base = None
                for w in worker_list:
                    log.info("bench algo=%s d=%d m=%d workers=%d", algo, d, m, w)
                    rep = timed_run(algo, patterns, t, w, repeats, tile_size)
                    med = rep.median
                    if base is None:
                        base = med
                    for phase in PHASES:
                        speedup = base[phase] / med[phase] if med[phase] > 0 else float("nan")
                        rows.append(BenchRow(algo, d, m, w, phase, med[phase], rep.count,
                                             speedup))
    return rows


def ac_wm_ratios(rows: list[BenchRow]) -> list[dict]:
    """WM over AC single-worker search time for every (d, m) present for both."""
    search = {(r.algo, r.d, r.m): r.median_seconds for r in rows
              if r.phase == "search" and r.workers == 1}
    out = []
    for (algo, d, m), ac_time in sorted(search.items()):
        if algo != "ac" or ("wm", d, m) not in search or ac_time <= 0:
            continue
        out.append({"d": d, "m": m, "ratio": search[("wm", d, m)] / ac_time,
                    "reference": REFERENCE_AC_WM_RATIO.get(d)})
    return out


def write_csv(rows: list[BenchRow], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for r in rows:
        writer.writerow(asdict(r))


def read_csv(fh) -> list[BenchRow]:
    rows = []
    for rec in csv.DictReader(fh):
        rows.append(BenchRow(rec["algo"], int(rec["d"]), int(rec["m"]), int(rec["workers"]),
                             rec["phase"], float(rec["median_seconds"]), int(rec["count"]),
                             float(rec["speedup_vs_1worker"])))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    buf.write(f"{'algo':<5}{'d':>7}{'m':>4}{'W':>4}{'phase':>12}{'median s':>12}"
              f"{'count':>12}{'speedup':>9}\n")
    for r in rows:
        buf.write(f"{r.algo:<5}{r.d:>7}{r.m:>4}{r.workers:>4}{r.phase:>12}"
                  f"{r.median_seconds:>12.6f}{r.count:>12}{r.speedup_vs_1worker:>9.2f}\n")
    return buf.getvalue()
