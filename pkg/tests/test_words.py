import pytest
from hypothesis import assume, given, settings, strategies as st

from acs.core import mask_of, minimize_good_generating, preset
from acs.words import (
    Letter,
    NoBoundError,
    Presentation,
    bad_word_bound,
    bad_words_by_length,
    check_labeling,
    count_reduced,
    enumerate_reduced,
    format_word,
    is_bad,
    is_reduced,
    lex_least_labeling,
    parse_word,
    propagate,
    transfer,
)
from oracles import labelings_final

M = mask_of
G = Letter(0, 1)
GI = Letter(0, -1)


def pres(n, pairs):
    return Presentation.from_pairs(n, pairs)


def three_div():
    E, gens = preset("divisibility", 3)
    return Presentation.from_pairs(3, minimize_good_generating(E, gens))


def test_transfer():
    p = pres(3, [(M([0]), M([1])), (M([1]), M([2]))])
    assert transfer(G, p) == (M([0]), M([1]))
    assert transfer(GI, p) == (M([1]), M([0]))
    q = pres(3, [(M([0]), M([1, 2]))])
    assert q.involution == (True,)
    assert transfer(q.letter(0, -1), q) == (M([0]), M([1, 2]))


def test_propagate_examples():
    p = pres(3, [(M([0]), M([1]))])
    assert propagate((), M([2]), p) == M([2])
    assert propagate((G,), M([0]), p) == M([1])
    assert propagate((G, G), M([0]), p) == M([0, 2])


def test_is_bad_examples():
    p = pres(3, [(M([0]), M([1]))])
    # from m=0 only label 1 is reachable; (0, 0) and (2, 0) are both bad pairs
    assert is_bad((G,), p) == (0, 0)
    assert is_bad((), p) is None
    assert is_bad((G, G), p) == (1, 0)


def test_enumerate_reduced_counts():
    f2 = pres(3, [(M([0]), M([1])), (M([1]), M([2]))])
    assert len(list(enumerate_reduced(f2, 1))) == 4
    assert len(list(enumerate_reduced(f2, 2))) == 12
    zz2 = pres(3, [(M([0]), M([1])), (M([0]), M([1, 2]))])
    words = list(enumerate_reduced(zz2, 2))
    # a, a', b with no letter followed by its inverse
    assert [format_word(w) for w in words] == [
        "g0 g0", "g0 g1", "g0' g0'", "g0' g1", "g1 g0", "g1 g0'"]
    for p in (f2, zz2):
        for length in range(5):
            ws = list(enumerate_reduced(p, length))
            assert len(ws) == count_reduced(p, length)
            assert ws == sorted(ws, key=lambda w: [a.sort_key() for a in w])
            assert all(is_reduced(w, p) for w in ws)


@st.composite
def presentations(draw, max_n=4, max_k=3):
    n = draw(st.integers(2, max_n))
    full = (1 << n) - 1
    sub = st.integers(1, full - 1)
    pairs = draw(st.lists(st.tuples(sub, sub), min_size=1, max_size=max_k))
    return pres(n, pairs)


@settings(max_examples=40, deadline=None)
@given(presentations(), st.data())
def test_propagate_matches_brute_force(p, data):
    length = data.draw(st.integers(0, 5))
    words = list(enumerate_reduced(p, length))
    assume(words)
    word = data.draw(st.sampled_from(words))
    xy = [transfer(a, p) for a in word]
    for m in range(p.n):
        got = propagate(word, 1 << m, p)
        assert {i for i in range(p.n) if got >> i & 1} == labelings_final(xy, p.n, m)


@settings(max_examples=60, deadline=None)
@given(presentations(), st.data())
def test_propagate_monotone_and_labelings(p, data):
    length = data.draw(st.integers(0, 6))
    words = list(enumerate_reduced(p, length))
    assume(words)
    word = data.draw(st.sampled_from(words))
    full = (1 << p.n) - 1
    small = data.draw(st.integers(0, full))
    big = small | data.draw(st.integers(0, full))
    assert propagate(word, small, p) & ~propagate(word, big, p) == 0
    for m in range(p.n):
        finals = propagate(word, 1 << m, p)
        for k in range(p.n):
            lab = lex_least_labeling(word, p, start=m, end=k)
            if finals >> k & 1:
                assert lab is not None and lab[0] == m and lab[-1] == k
                assert check_labeling(word, lab, p)
            else:
                assert lab is None


def test_bad_word_segments_are_bad():
    for p in (three_div(), pres(4, preset("paradoxical")[1])):
        for length in range(2, 6):
            for w in enumerate_reduced(p, length):
                if is_bad(w, p):
                    assert is_bad(w[1:], p) and is_bad(w[:-1], p)


def test_bad_word_bound_three_divisibility():
    p = three_div()
    r = bad_word_bound(p, cap=12)
    assert r == 5
    assert not any(is_bad(w, p) for w in enumerate_reduced(p, r))
    assert any(is_bad(w, p) for w in enumerate_reduced(p, r - 1))
    for length in range(r, r + 3):
        assert not any(is_bad(w, p) for w in enumerate_reduced(p, length))


def test_bad_word_dp_matches_enumeration():
    for p in (three_div(), pres(4, preset("paradoxical")[1])):
        found = bad_words_by_length(p, 6)
        for length, item in enumerate(found, start=1):
            bad = [w for w in enumerate_reduced(p, length) if is_bad(w, p)]
            if item is None:
                assert bad == []
            else:
                assert item[0] == bad[0]
                assert (item[1], item[2]) == is_bad(bad[0], p)


def test_bad_word_bound_paradoxical_exhausts_cap():
    p = pres(4, preset("paradoxical")[1])
    with pytest.raises(NoBoundError) as info:
        bad_word_bound(p, cap=12)
    assert len(info.value.word) == 12
    assert is_bad(info.value.word, p) == (info.value.k, info.value.m)


def test_bad_word_bound_without_generators():
    assert bad_word_bound(pres(5, []), cap=3) == 0


def test_word_text_format():
    p = three_div()
    w = parse_word("g0 g1' g1'", p)
    assert w == (Letter(0, 1), Letter(1, -1), Letter(1, -1))
    assert format_word(w) == "g0 g1' g1'"
    with pytest.raises(ValueError):
        parse_word("x1")
