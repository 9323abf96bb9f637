"""Input preparation: sequence files to a flat text, and pattern-set sampling."""

from __future__ import annotations

import os
import warnings
from pathlib import Path

import numpy as np

from .core import PatternSet, TextLike, as_text

HEADER_PREFIXES = (b">", b";")
DNA = b"acgt"


def load_text(path: str | os.PathLike, limit: int | None = None) -> np.ndarray:
    """Read a plain or FASTA-like file as one line-break-free byte string.

    Lines starting with ``>`` or ``;`` are dropped. Bytes are otherwise kept
    verbatim. With ``limit``, reading stops once that many characters are
    collected.
    """
    parts = []
    have = 0
    with open(path, "rb") as fh:
        for line in fh:
            if line.startswith(HEADER_PREFIXES):
                continue
            line = line.rstrip(b"\r\n")
            if limit is not None and have + len(line) >= limit:
                parts.append(line[:limit - have])
                have = limit
                break
            parts.append(line)
            have += len(line)
    data = b"".join(parts)
    if not data:
        warnings.warn(f"{path}: no sequence characters found; text is empty", stacklevel=2)
    return as_text(data)


def synthetic_dna(n: int, seed: int = 0, alphabet: bytes = DNA) -> np.ndarray:
    """Uniform random sequence over *alphabet*."""
    rng = np.random.default_rng(seed)
    table = np.frombuffer(alphabet, dtype=np.uint8)
    return as_text(table[rng.integers(0, table.size, size=n)])


def generate_patterns(text: TextLike, d: int, m: int, seed: int = 0) -> PatternSet:
    """Sample ``d`` length-``m`` substrings of *text* at uniform random starts.

    Sampling is with replacement. Since pattern ``r`` occurs at least at its
    own sampled start, the set has at least ``d`` matches in *text*, which
    covers the ``min(d, n // m)`` floor.
    """
    t = as_text(text)
    n = t.size
    if m < 1 or d < 1:
        raise ValueError("need d >= 1 and m >= 1")
    if n < m:
        raise ValueError(f"text of length {n} is shorter than pattern length {m}")
    rng = np.random.default_rng(seed)
    starts = rng.integers(0, n - m + 1, size=d)
    windows = t[starts[:, None] + np.arange(m)]
    patterns = PatternSet(row.tobytes() for row in windows)
    assert all(t[s:s + m].tobytes() == p for s, p in zip(starts.tolist(), patterns))
    return patterns


def write_patterns(path: str | os.PathLike, patterns: PatternSet) -> None:
    Path(path).write_bytes(b"".join(p + b"\n" for p in patterns))


def read_patterns(path: str | os.PathLike) -> PatternSet:
    """One pattern per line; a trailing newline is optional, ``\\r\\n`` is accepted."""
    lines = Path(path).read_bytes().split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return PatternSet(line.rstrip(b"\r") for line in lines)
