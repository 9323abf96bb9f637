#!/usr/bin/env python
# A small version of the benchmark grid: pattern-set sizes x worker counts,
# written as CSV and summarised as AC-over-WM ratios.
import io

from multiscan.bench import ac_wm_ratios, format_table, run_bench, write_csv
from multiscan.ingest import synthetic_dna

text = synthetic_dna(4 << 20, seed=3)
rows = run_bench(text, pattern_sizes=(8,), set_sizes=(1000, 8000), workers=(1, 2), repeats=2)
print(format_table([r for r in rows if r.phase == "search"]))

buf = io.StringIO()
write_csv(rows, buf)
print(buf.getvalue().splitlines()[0])

for r in ac_wm_ratios(rows):
    print(f"d={r['d']}: AC {r['ratio']:.2f}x faster than WM (GPU cluster: {r['reference']}x)")
