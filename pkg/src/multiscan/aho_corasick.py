"""Aho-Corasick automaton: goto trie, supply links, dense tables and search.

The automaton is built in three steps that can be run and inspected
separately::

    trie = build_goto(patterns)      # linked trie, one TrieState per state
    build_supply(trie)               # supply (failure) links, root self-loops
    automaton = compile(trie)        # dense numpy tables for scanning

Dense rows keep ``FAIL`` wherever the trie has no edge; the search walks
supply links at scan time. ``compile(trie, precompute=True)`` instead
folds supply transitions into the table so that no entry outside row 0
is ever ``FAIL`` either.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numba
import numpy as np

from .core import PatternSet, TextLike, as_text, check_range

STATE_DTYPE = np.uint32
FAIL = np.iinfo(STATE_DTYPE).max
ALPHABET = 256


@dataclass
class TrieState:
    id: int
    depth: int
    transitions: dict[int, int] = field(default_factory=dict)
    supply: int = 0
    final_count: int = 0
    pattern_ids: list[int] = field(default_factory=list)


def build_goto(patterns: PatternSet) -> list[TrieState]:
    """Insert every pattern into a trie; shared prefixes share states."""
    trie = [TrieState(id=0, depth=0)]
    for i, pat in enumerate(patterns):
        state = 0
        for c in pat:
            nxt = trie[state].transitions.get(c)
            if nxt is None:
                nxt = len(trie)
                trie.append(TrieState(id=nxt, depth=trie[state].depth + 1))
                trie[state].transitions[c] = nxt
            state = nxt
        trie[state].final_count += 1
        trie[state].pattern_ids.append(i)
    return trie


def build_supply(trie: list[TrieState]) -> list[TrieState]:
    """Compute supply links breadth-first and close the root's missing edges.

    Mutates and returns *trie*. After this call state 0 has an edge for all
    256 byte values, so every supply walk terminates.
    """
    root = trie[0]
    for c in range(ALPHABET):
        s = root.transitions.get(c)
        if s is None:
            root.transitions[c] = 0
        else:
            trie[s].supply = 0

    queue = deque(s for s in root.transitions.values() if s != 0)
    while queue:
        cur = queue.popleft()
        for c, s in trie[cur].transitions.items():
            state = trie[cur].supply
            while c not in trie[state].transitions:
                state = trie[state].supply
            trie[s].supply = trie[state].transitions[c]
            queue.append(s)
    return trie


@dataclass(frozen=True)
class AcAutomaton:
    """Dense, immutable form of the trie.

    ``state_transition[q, c]`` is the next state or ``FAIL``; ``state_supply``
    and ``state_final`` are indexed by state. ``state_patterns`` maps each
    terminal state to the pattern indices ending there (used for position
    reporting only).
    """

    state_transition: np.ndarray
    state_supply: np.ndarray
    state_final: np.ndarray
    state_patterns: dict[int, tuple[int, ...]]
    m: int
    precomputed: bool = False

    @property
    def num_states(self) -> int:
        return self.state_transition.shape[0]


def compile(trie: list[TrieState], precompute: bool = False) -> AcAutomaton:  # noqa: A001
    """Lay the linked trie out as dense ``uint32`` tables."""
    k = len(trie)
    transition = np.full((k, ALPHABET), FAIL, dtype=STATE_DTYPE)
    supply = np.zeros(k, dtype=STATE_DTYPE)
    final = np.zeros(k, dtype=np.uint32)
    state_patterns = {}
    for st in trie:
        for c, s in st.transitions.items():
            transition[st.id, c] = s
        supply[st.id] = st.supply
        final[st.id] = st.final_count
        if st.pattern_ids:
            state_patterns[st.id] = tuple(st.pattern_ids)
    if (transition[0] == FAIL).any():
        raise ValueError("root row has FAIL entries; run build_supply first")

    if precompute:
        # BFS order guarantees a state's supply row is complete before it is read.
        order = sorted(range(1, k), key=lambda q: trie[q].depth)
        for q in order:
            row = transition[q]
            missing = row == FAIL
            row[missing] = transition[supply[q]][missing]

    m = max((st.depth for st in trie), default=0)
    for arr in (transition, supply, final):
        arr.flags.writeable = False
    return AcAutomaton(transition, supply, final, state_patterns, m, precompute)


def build_automaton(patterns: PatternSet, precompute: bool = False) -> AcAutomaton:
    return compile(build_supply(build_goto(patterns)), precompute=precompute)


@numba.njit(nogil=True, cache=True)
def _scan(transition, supply, final, text, start, stop, out_pos, out_state):
    state = 0
    total = 0
    steps = 0
    k = 0
    record = out_pos.size > 0
    for i in range(start, stop):
        c = text[i]
        nxt = transition[state, c]
        while nxt == FAIL:
            state = supply[state]
            steps += 1
            nxt = transition[state, c]
        state = nxt
        f = final[state]
        if f:
            total += f
            if record:
                out_pos[k] = i
                out_state[k] = state
                k += 1
    return total, steps, k


_NO_OUT = np.empty(0, dtype=np.int64)
_NO_STATE = np.empty(0, dtype=np.uint32)


def ac_search(automaton: AcAutomaton, text: TextLike, start: int = 0,
              stop: int | None = None) -> int:
    """Count matches lying entirely inside ``text[start:stop]``.

    The scan starts cold in state 0 at *start*, so a match is counted only
    if all ``m`` of its characters fall in the range.
    """
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    total, _, _ = _scan(automaton.state_transition, automaton.state_supply,
                        automaton.state_final, t, start, stop, _NO_OUT, _NO_STATE)
    return int(total)


def ac_search_stats(automaton: AcAutomaton, text: TextLike, start: int = 0,
                    stop: int | None = None) -> tuple[int, int]:
    """Like :func:`ac_search` but also return the number of supply-link steps taken."""
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    total, steps, _ = _scan(automaton.state_transition, automaton.state_supply,
                            automaton.state_final, t, start, stop, _NO_OUT, _NO_STATE)
    return int(total), int(steps)


def ac_positions(automaton: AcAutomaton, text: TextLike, start: int = 0,
                 stop: int | None = None) -> list[tuple[int, int]]:
    """Sorted ``(start position, pattern index)`` pairs for matches in the range."""
    t = as_text(text)
    start, stop = check_range(t.size, start, stop)
    args = (automaton.state_transition, automaton.state_supply, automaton.state_final, t,
            start, stop)
    total, _, _ = _scan(*args, _NO_OUT, _NO_STATE)
    # one slot per terminal visit; a visit may stand for several pattern indices
    slots = max(int(total), 1)
    pos = np.empty(slots, dtype=np.int64)
    states = np.empty(slots, dtype=np.uint32)
    _, _, k = _scan(*args, pos, states)
    m = automaton.m
    out = []
    for i, q in zip(pos[:k].tolist(), states[:k].tolist()):
        for r in automaton.state_patterns[q]:
            out.append((i - m + 1, r))
    return out


def trie_search(trie: list[TrieState], text: TextLike, start: int = 0,
                stop: int | None = None) -> int:
    """Reference search over the linked trie, for differential testing."""
    t = bytes(as_text(text))
    start, stop = check_range(len(t), start, stop)
    state = 0
    total = 0
    for i in range(start, stop):
        c = t[i]
        while c not in trie[state].transitions:
            state = trie[state].supply
        state = trie[state].transitions[c]
        total += trie[state].final_count
    return total
