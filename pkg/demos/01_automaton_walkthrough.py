#!/usr/bin/env python
# Build the Aho-Corasick automaton for AAC, AGT, GTA one step at a time and
# watch the supply links resolve.
from multiscan import PatternSet, ac_positions, ac_search, build_goto, build_supply
from multiscan.aho_corasick import FAIL, compile

patterns = PatternSet([b"AAC", b"AGT", b"GTA"])

# goto function: one state per distinct prefix, numbered in insertion order
trie = build_goto(patterns)
for st in trie:
    edges = {chr(c): s for c, s in st.transitions.items()}
    print(f"state {st.id} depth {st.depth} edges {edges} final {st.final_count}")

# supply links, computed breadth-first; state 5 (AGT) falls back through
# state 4's supply (G, state 6) along T to state 7 (GT)
build_supply(trie)
for st in trie[1:]:
    print(f"Supply({st.id}) = {st.supply}")

# dense tables: rows are states, columns are byte values
automaton = compile(trie)
row = automaton.state_transition[4]
print("state 4 edges:", {chr(c): int(s) for c, s in enumerate(row) if s != FAIL})
print("tables:", automaton.state_transition.shape, automaton.state_transition.dtype)

text = b"AACAGTA"
print("count:", ac_search(automaton, text))
for pos, r in ac_positions(automaton, text):
    print(f"  {patterns[r].decode()} at {pos}")

# folding the supply walk into the table trades memory for a branch-free scan
full = compile(trie, precompute=True)
print("precomputed count:", ac_search(full, text))
