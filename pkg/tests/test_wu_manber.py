import numpy as np
import pytest

from multiscan.core import PatternSet, naive_count, naive_positions
from multiscan.wu_manber import (WmParams, hash_block, hash_space, wm_positions,
                                 wm_preprocess, wm_search, wm_visited)

from conftest import FIG1, FIG1_TEXT, random_instance


def brute_shift(ps, B, bitshift):
    """Minimal distance from each B-block's end to a pattern end, by enumeration."""
    table = {}
    for p in ps:
        for end in range(B, ps.m + 1):
            h = hash_block(p[end - B:end], bitshift)
            table[h] = min(table.get(h, ps.m - B + 1), ps.m - end)
    return table


class TestHash:
    def test_aac(self):
        assert hash_block(b"aac", 2) == ((97 * 4) + 97) * 4 + 99 == 2039

    def test_single_byte(self):
        for c in (0, 7, 255):
            assert hash_block(bytes([c]), 2) == c

    def test_zero_bytes(self):
        assert hash_block(b"\0" * 5, 2) == 0

    def test_space_formula(self):
        assert hash_space(3, 2) == 256 * (1 + 4 + 16) == 5376

    def test_hash_below_space(self, rng):
        for block in range(1, 5):
            for bs in range(0, 5):
                assert hash_block(b"\xff" * block, bs) < hash_space(block, bs)

    def test_empty_block_rejected(self):
        with pytest.raises(ValueError):
            hash_block(b"", 2)


class TestPreprocess:
    def test_defaults(self):
        assert WmParams() == WmParams(3, 2, 2)

    def test_initial_shift_for_m8(self):
        # a pattern set whose blocks hash to few cells leaves the rest untouched
        t = wm_preprocess(PatternSet([b"\0" * 8]))
        assert t.shift.size == 5376
        assert (np.delete(t.shift, 0) == 6).all()

    def test_unary_pattern(self):
        t = wm_preprocess(PatternSet([b"a" * 8]))
        h = hash_block(b"aaa", 2)
        assert t.shift[h] == 0
        assert t.bucket(h).tolist() == [0]
        assert (np.delete(t.shift, h) == 6).all()
        assert t.prefix[0] == hash_block(b"aa", 2)

    def test_distinct_blocks(self):
        t = wm_preprocess(PatternSet([b"abcdefgh"]))
        got = [int(t.shift[hash_block(b, 2)]) for b in (b"fgh", b"efg", b"def", b"cde", b"bcd", b"abc")]
        assert got == [0, 1, 2, 3, 4, 5]

    def test_rejects_m_below_B(self):
        with pytest.raises(ValueError, match="block size"):
            wm_preprocess(PatternSet([b"ab"]))

    def test_bad_params(self):
        with pytest.raises(ValueError):
            WmParams(B=2, B_prime=3)
        with pytest.raises(ValueError):
            WmParams(B_prime=0)

    def test_matches_brute_force_shift(self, rng):
        for _ in range(100):
            _, ps = random_instance(rng, n_max=0, d_max=30, m_min=3, m_max=10)
            t = wm_preprocess(ps)
            expected = np.full(t.shift.size, ps.m - 2, dtype=np.int32)
            for h, s in brute_shift(ps, 3, 2).items():
                expected[h] = s
            assert np.array_equal(t.shift, expected)

    def test_table_invariants(self, rng):
        for _ in range(100):
            _, ps = random_instance(rng, n_max=0, d_max=40, m_min=3, m_max=12)
            t = wm_preprocess(ps)
            assert t.shift.min() >= 0 and t.shift.max() <= ps.m - 2
            sizes = np.diff(t.bucket_offsets)
            assert np.array_equal(t.shift == 0, sizes > 0)
            assert t.block_visits == ps.d * (ps.m - 3 + 1)
            for h in np.flatnonzero(sizes):
                b = t.bucket(h).tolist()
                assert b == sorted(b)
                assert all(hash_block(ps[r][-3:], 2) == h for r in b)
            assert sorted(t.bucket_items.tolist()) == list(range(ps.d))
            for r, p in enumerate(ps):
                assert t.prefix[r] == hash_block(p[:2], 2)


class TestSearch:
    def test_fig1(self):
        t = wm_preprocess(FIG1)
        assert wm_search(t, FIG1_TEXT) == 3
        assert wm_positions(t, FIG1_TEXT) == [(0, 0), (3, 1), (4, 2)]

    def test_short_text(self):
        assert wm_search(wm_preprocess(FIG1), b"AA") == 0

    def test_unary(self):
        assert wm_search(wm_preprocess(PatternSet([b"a" * 8])), b"a" * 100) == 93

    def test_out_of_bounds(self):
        with pytest.raises(ValueError):
            wm_search(wm_preprocess(FIG1), FIG1_TEXT, 2, 9)

    def test_range_contract_matches_ac(self):
        t = wm_preprocess(FIG1)
        assert wm_search(t, FIG1_TEXT, 3, 6) == 1
        assert wm_search(t, FIG1_TEXT, 4, 7) == 1
        assert wm_search(t, FIG1_TEXT, 3, 5) == 0

    @pytest.mark.parametrize("params", [WmParams(), WmParams(3, 3, 2), WmParams(4, 1, 3),
                                        WmParams(2, 2, 0), WmParams(1, 1, 8)])
    def test_params_oracle(self, rng, params):
        for _ in range(60):
            text, ps = random_instance(rng, n_max=2000, d_max=20, m_min=params.B, m_max=10)
            assert wm_search(wm_preprocess(ps, params), text) == naive_count(text, ps)

    def test_oracle_equivalence(self, rng):
        for _ in range(300):
            text, ps = random_instance(rng, n_max=3000, m_min=3)
            assert wm_search(wm_preprocess(ps), text) == naive_count(text, ps)

    def test_positions_sound_and_complete(self, rng):
        for _ in range(150):
            text, ps = random_instance(rng, n_max=400, d_max=12, m_min=3, m_max=6, sigma=2)
            found = wm_positions(wm_preprocess(ps), text)
            for pos, r in found:
                assert text[pos:pos + ps.m].tobytes() == ps[r]
            assert found == naive_positions(text, ps)

    def test_shifts_never_skip_occurrences(self, rng):
        for _ in range(200):
            text, ps = random_instance(rng, n_max=400, d_max=8, m_min=3, m_max=8,
                                       sigma=int(rng.choice([2, 4])))
            m = ps.m
            visited = set(wm_visited(wm_preprocess(ps), text))
            ends = {pos + m - 1 for pos, _ in naive_positions(text, ps)}
            skipped = set(range(m - 1, text.size)) - visited
            assert not (skipped & ends)

    def test_duplicates_counted_per_index(self):
        t = wm_preprocess(PatternSet([b"abc", b"abc", b"bca"]))
        assert wm_search(t, b"abcabc") == 5
