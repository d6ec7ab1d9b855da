import pytest
from hypothesis import given, settings, strategies as st

from ffdesign.errors import CapabilityError, DesignError
from ffdesign.gf2 import Design, odd_set
from ffdesign.wlp import (
    alias_chain,
    compare_aberration,
    complement_word_stats,
    defining_relation,
    eliminated_by_formula,
    first_difference,
    format_wlp,
    length_histogram,
    letter_frequencies,
    pair_identity_holds,
    parse_wlp,
    resolution,
    word_columns,
    wlp,
)

from conftest import brute_wlp

small_designs = st.integers(2, 5).flatmap(
    lambda m: st.lists(st.integers(1, (1 << m) - 1), unique=True, max_size=11).map(lambda cs: Design(m, tuple(cs)))
)


@settings(max_examples=80, deadline=None)
@given(small_designs)
def test_wlp_matches_subset_scan(d):
    assert wlp(d) == brute_wlp(d.columns)


def test_d1_short_words_share_abcd(d1):
    words = defining_relation(d1)
    assert len(words) == 2 ** 5 - 1
    short = [word_columns(d1, w) for w in words if w.bit_count() == 3]
    assert len(short) == 4
    assert all(0b1111 in cols for cols in short)


def test_resolution(d1, o4):
    assert resolution(d1) == 3
    assert resolution(o4) == 4
    assert resolution(Design.parse("A,B,C")) == 0


def test_large_p_is_refused():
    from ffdesign.gf2 import hamming_set

    with pytest.raises(CapabilityError):
        wlp(hamming_set(6))


def test_compare(d1, d2):
    assert compare_aberration(d1, d2) == -1
    assert compare_aberration(d2, d1) == 1
    assert compare_aberration(d1, d1) == 0
    assert first_difference(wlp(d1), wlp(d2)) == 3
    with pytest.raises(DesignError):
        compare_aberration(d1, Design.parse("A,B,C,D,ABC", 4))


def test_format_roundtrip():
    assert format_wlp((0, 0, 4)) == "(0,0,4)"
    assert parse_wlp(" (0, 0,4) ") == (0, 0, 4)
    assert parse_wlp("()") == ()
    with pytest.raises(DesignError):
        parse_wlp("0,0,4")


def test_even_alias_chain_of_o4(o4):
    chain = alias_chain(o4, 0b11)
    assert length_histogram(chain, 8) == (0, 0, 4, 0, 8, 0, 4, 0, 0)
    assert alias_chain(Design.parse("A,B", 3), 0b100) == []


def test_letter_frequencies_sum(d1):
    alpha = letter_frequencies(d1)
    w = wlp(d1)
    for length, freq in alpha.items():
        assert sum(freq) == length * w[length - 1]


@pytest.mark.parametrize("removed,a3,lost", [("AB,AC,BC", 1, 19), ("AB,AC,ABCD", 0, 18)])
def test_complement_word_stats(removed, a3, lost):
    stats = complement_word_stats(Design.parse(removed, 4))
    assert (stats.a3_bar, stats.eliminated) == (a3, lost)
    assert eliminated_by_formula(3, 16, a3) == lost
    assert pair_identity_holds(stats)


def test_odd_set_has_no_short_words():
    assert wlp(odd_set(5))[:3] == (0, 0, 0)
