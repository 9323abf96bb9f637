#!/usr/bin/env python
# Three worker servers on loopback, one coordinator, shared-file input.
import tempfile
from pathlib import Path

from multiscan import generate_patterns, parallel_count, make_matcher, synthetic_dna
from multiscan.cluster import WorkerServer, coordinate

text = synthetic_dna(2 << 20, seed=2)
patterns = generate_patterns(text, 1000, 8, seed=2)

servers = [WorkerServer(("127.0.0.1", 0)) for _ in range(3)]
for s in servers:
    s.start()
endpoints = [s.address for s in servers]

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "est.txt"
    path.write_bytes(text.tobytes())
    result = coordinate(endpoints, "ac", patterns, path=path, local_workers=2)

for node in result.nodes:
    print(f"rank {node.rank} @ {node.endpoint}: [{node.start}, {node.stop}) -> {node.count} "
          f"(load {node.load:.4f}s, search {node.search:.4f}s)")
print("cluster total:", result.total)
print("local total:  ", parallel_count(make_matcher("ac", patterns), text, 4)[1])

# inline mode ships each node its bytes instead of a path
print("inline total: ", coordinate(endpoints, "wm", patterns, text=text).total)

for s in servers:
    s.shutdown()
    s.server_close()
