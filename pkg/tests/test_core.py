import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiscan.core import PatternSet, as_text, check_range, naive_count, naive_positions

from conftest import FIG1, FIG1_TEXT


def test_fig1_count_by_enumeration():
    assert naive_positions(FIG1_TEXT, FIG1) == [(0, 0), (3, 1), (4, 2)]
    assert naive_count(FIG1_TEXT, FIG1) == 3


def test_overlapping_occurrences():
    assert naive_count(b"aaaa", PatternSet([b"aa"])) == 3


def test_text_shorter_than_pattern():
    assert naive_count(b"acg", PatternSet([b"acgt"])) == 0
    assert naive_count(b"", PatternSet([b"a"])) == 0


def test_pattern_set_rejects_mixed_lengths():
    with pytest.raises(ValueError, match="uniform"):
        PatternSet([b"ab", b"abc"])
    with pytest.raises(ValueError):
        PatternSet([])
    with pytest.raises(ValueError):
        PatternSet([b""])


def test_pattern_set_properties():
    ps = PatternSet(["acgt", b"tttt", "acgt"])
    assert (ps.d, ps.m, ps.size) == (3, 4, 12)
    assert ps[2] == b"acgt"
    assert ps.as_array().shape == (3, 4)


def test_as_text_is_read_only_view():
    arr = np.frombuffer(bytearray(b"acgt"), dtype=np.uint8)
    t = as_text(arr)
    assert not t.flags.writeable
    assert as_text("acgt").tobytes() == b"acgt"
    with pytest.raises(TypeError):
        as_text(np.zeros(3, dtype=np.int32))


def test_check_range():
    assert check_range(10, 0, None) == (0, 10)
    with pytest.raises(ValueError):
        check_range(10, 3, 11)
    with pytest.raises(ValueError):
        check_range(10, 4, 3)


texts = st.binary(min_size=0, max_size=60).map(lambda b: bytes(x % 3 for x in b))


@st.composite
def instances(draw):
    m = draw(st.integers(1, 4))
    pats = draw(st.lists(st.binary(min_size=m, max_size=m).map(lambda b: bytes(x % 3 for x in b)),
                         min_size=1, max_size=6))
    return draw(texts), PatternSet(pats)


@settings(max_examples=200, deadline=None)
@given(instances(), st.randoms())
def test_count_invariant_under_reordering(inst, rnd):
    text, ps = inst
    pats = list(ps)
    rnd.shuffle(pats)
    assert naive_count(text, PatternSet(pats)) == naive_count(text, ps)


@settings(max_examples=200, deadline=None)
@given(instances(), st.integers(0, 2))
def test_appending_never_decreases(inst, c):
    text, ps = inst
    assert naive_count(text + bytes([c]), ps) >= naive_count(text, ps)


@settings(max_examples=200, deadline=None)
@given(instances(), st.data())
def test_duplicating_pattern_doubles_its_contribution(inst, data):
    text, ps = inst
    r = data.draw(st.integers(0, ps.d - 1))
    single = naive_count(text, PatternSet([ps[r]]))
    assert naive_count(text, PatternSet(list(ps) + [ps[r]])) == naive_count(text, ps) + single
    assert naive_count(text, PatternSet([ps[r], ps[r]])) == 2 * single


@settings(max_examples=200, deadline=None)
@given(instances())
def test_count_agrees_with_position_enumeration(inst):
    text, ps = inst
    assert naive_count(text, ps) == len(naive_positions(text, ps))
