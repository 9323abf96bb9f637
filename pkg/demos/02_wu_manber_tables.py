#!/usr/bin/env python
# Inspect the SHIFT / HASH / PREFIX tables and see which windows the search
# actually examines.
from itertools import product

from multiscan import (PatternSet, WmParams, generate_patterns, hash_block, wm_positions,
                       wm_preprocess)
from multiscan.ingest import synthetic_dna
from multiscan.wu_manber import wm_visited

patterns = PatternSet([b"abcdefgh", b"xxabcxxx"])
tables = wm_preprocess(patterns, WmParams(B=3, B_prime=2, bitshift=2))
print("SHIFT entries:", tables.shift.size, "default shift:", patterns.m - 3 + 1)
for block in (b"fgh", b"efg", b"abc", b"xxx", b"zzz"):
    h = hash_block(block, 2)
    print(f"  SHIFT[h({block.decode()})={h}] = {tables.shift[h]}  bucket {tables.bucket(h).tolist()}")
print("PREFIX:", tables.prefix.tolist())

text = b"....abcdefgh....xxabcxxx..abcdefgh"
print("matches:", wm_positions(tables, text))
visited = wm_visited(tables, text)
print(f"examined {len(visited)} of {len(text) - patterns.m + 1} alignments:", visited)

# on DNA the 3-character blocks almost always occur in some pattern, so shifts collapse
dna = synthetic_dna(1 << 16, seed=0)
dna_tables = wm_preprocess(generate_patterns(dna, 1000, 8, seed=0))
reachable = [hash_block(bytes(b), 2) for b in product(b"acgt", repeat=3)]
zero = sum(dna_tables.shift[h] == 0 for h in reachable)
print(f"DNA, d=1000: {zero} of {len(reachable)} reachable blocks have shift 0")
print(f"             examined {len(wm_visited(dna_tables, dna))} of {dna.size - 7} alignments")
