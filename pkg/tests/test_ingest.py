import warnings

import numpy as np
import pytest

from multiscan.core import PatternSet, naive_count
from multiscan.ingest import (generate_patterns, load_text, read_patterns, synthetic_dna,
                              write_patterns)


def test_fasta_headers_and_newlines(tmp_path):
    f = tmp_path / "a.fa"
    f.write_bytes(b">h\nacgt\nacgt\n")
    assert load_text(f).tobytes() == b"acgtacgt"


def test_semicolon_comments_and_crlf(tmp_path):
    f = tmp_path / "a.fa"
    f.write_bytes(b";comment\r\nAC\r\n>second record\r\nGT")
    assert load_text(f).tobytes() == b"ACGT"


def test_plain_file(tmp_path):
    f = tmp_path / "a.txt"
    f.write_bytes(b"acgt")
    assert load_text(f).tobytes() == b"acgt"


def test_limit(tmp_path):
    f = tmp_path / "a.txt"
    f.write_bytes(b"acgtacgt")
    assert load_text(f, limit=4).tobytes() == b"acgt"
    f.write_bytes(b">x\nac\ngt\nac\n")
    assert load_text(f, limit=3).tobytes() == b"acg"
    assert load_text(f, limit=100).tobytes() == b"acgtac"


def test_idempotent_on_clean_input(tmp_path):
    f = tmp_path / "a.txt"
    f.write_bytes(b">h\nac\ngt\n")
    once = load_text(f).tobytes()
    g = tmp_path / "b.txt"
    g.write_bytes(once)
    assert load_text(g).tobytes() == once


def test_empty_text_warns(tmp_path):
    f = tmp_path / "e.fa"
    f.write_bytes(b">only a header\n")
    with pytest.warns(UserWarning, match="empty"):
        assert load_text(f).size == 0


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_text(tmp_path / "nope")


def test_synthetic_dna_alphabet():
    t = synthetic_dna(10_000, seed=1)
    assert set(t.tobytes()) == set(b"acgt")
    assert np.array_equal(t, synthetic_dna(10_000, seed=1))


def test_single_pattern_occurs():
    t = synthetic_dna(500, seed=2)
    ps = generate_patterns(t, 1, 8, seed=0)
    assert naive_count(t, ps) >= 1


def test_unary_text():
    t = np.frombuffer(b"a" * 80, dtype=np.uint8)
    ps = generate_patterns(t, 1000, 8, seed=5)
    assert set(ps) == {b"a" * 8}
    assert naive_count(t, PatternSet([ps[0]])) == 73
    assert naive_count(t, ps) >= min(1000, 80 // 8)


def test_determinism():
    t = synthetic_dna(2000, seed=3)
    assert generate_patterns(t, 50, 8, seed=9) == generate_patterns(t, 50, 8, seed=9)
    assert generate_patterns(t, 50, 8, seed=9) != generate_patterns(t, 50, 8, seed=10)


def test_every_pattern_is_substring(rng):
    for _ in range(20):
        t = synthetic_dna(int(rng.integers(8, 3000)), seed=int(rng.integers(1 << 30)))
        ps = generate_patterns(t, int(rng.integers(1, 100)), 8, seed=int(rng.integers(1 << 30)))
        raw = t.tobytes()
        assert all(p in raw for p in ps)


def test_rejects_short_text():
    with pytest.raises(ValueError):
        generate_patterns(b"acg", 1, 8)


def test_pattern_file_round_trip(tmp_path):
    ps = PatternSet([b"acgtacgt", b"ttttaaaa"])
    f = tmp_path / "p.txt"
    write_patterns(f, ps)
    assert f.read_bytes() == b"acgtacgt\nttttaaaa\n"
    assert read_patterns(f) == ps
    f.write_bytes(b"acgt\r\ngggg")
    assert read_patterns(f) == PatternSet([b"acgt", b"gggg"])


def test_pattern_file_uniform_length(tmp_path):
    f = tmp_path / "p.txt"
    f.write_bytes(b"acgt\nacg\n")
    with pytest.raises(ValueError, match="uniform"):
        read_patterns(f)
