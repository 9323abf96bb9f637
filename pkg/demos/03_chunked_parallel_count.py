#!/usr/bin/env python
# Split a text across workers with m-1 overlap, count per worker, reduce.
from multiscan import Engine, generate_patterns, make_matcher, make_plan, synthetic_dna, timed_run
from multiscan.partition import tiles

text = synthetic_dna(4 << 20, seed=1)
patterns = generate_patterns(text, 8000, 8, seed=1)

plan = make_plan(text.size, patterns.m, 4)
for c in plan.chunks:
    print(f"worker {c.worker_id}: base [{c.base_start}, {c.base_end}) scans to {c.scan_stop}")
print("extra characters scanned:", plan.overlap_surplus)

first_tiles = list(tiles(plan.chunks[0], 16128, patterns.m))[:3]
print("first tiles of worker 0:", first_tiles)

matcher = make_matcher("ac", patterns)
with Engine(4) as engine:
    plain = engine.count(matcher, text)
    tiled = engine.count(matcher, text, tile_size=16128)
print("per-worker counts:", plain.per_worker.tolist(), "total:", plain.total)
print("tiled per-worker: ", tiled.per_worker.tolist(), "total:", tiled.total)

for algo in ("ac", "wm"):
    for w in (1, 4):
        rep = timed_run(algo, patterns, text, w, repeats=3)
        med = rep.median
        print(f"{algo} W={w}: preprocess {med['preprocess']:.4f}s search {med['search']:.4f}s "
              f"reduce {med['reduce'] * 1e6:.1f}us count {rep.count}")
