"""Multi-pattern exact string counting with Aho-Corasick and Wu-Manber.

Counting can run on one thread, across a pool of threads over overlapping
text chunks, or across TCP worker processes.
"""

from .aho_corasick import (AcAutomaton, TrieState, ac_positions, ac_search, build_automaton,
                           build_goto, build_supply, compile)
from .core import PatternSet, as_text, naive_count, naive_positions
from .engine import AcMatcher, Engine, WmMatcher, make_matcher, parallel_count, timed_run
from .ingest import generate_patterns, load_text, read_patterns, synthetic_dna, write_patterns
from .partition import PartitionPlan, chunk_bounds, make_plan, tiles
from .wu_manber import WmParams, WmTables, hash_block, wm_positions, wm_preprocess, wm_search

__version__ = "0.1.0"

__all__ = [
    "AcAutomaton", "AcMatcher", "Engine", "PartitionPlan", "PatternSet", "TrieState",
    "WmMatcher", "WmParams", "WmTables", "ac_positions", "ac_search", "as_text",
    "build_automaton", "build_goto", "build_supply", "chunk_bounds",
    "generate_patterns", "hash_block", "load_text", "make_matcher", "make_plan",
    "naive_count", "naive_positions", "parallel_count", "read_patterns", "synthetic_dna",
    "tiles", "timed_run", "wm_positions", "wm_preprocess", "wm_search", "write_patterns",
]
