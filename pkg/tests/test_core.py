import pytest
from hypothesis import given, settings, strategies as st

from acs import CapacityError, GenerationError
from acs.core import (
    CongruenceSystem,
    ExpansionWitness,
    check_expansion_witness,
    closure,
    complement,
    complementary_pairs,
    is_non_complementing,
    is_non_expanding,
    mask_of,
    minimize_good_generating,
    preset,
    system_from_json,
    system_to_json,
)
from oracles import naive_closure_partition, naive_is_expanding

M = mask_of


@st.composite
def pair_sets(draw, max_n=5, max_pairs=4):
    n = draw(st.integers(2, max_n))
    full = (1 << n) - 1
    sub = st.integers(1, full - 1)
    pairs = draw(st.lists(st.tuples(sub, sub), max_size=max_pairs))
    return n, pairs


def test_closure_empty_is_identity():
    E = closure(4, [])
    assert len(E.classes) == 14
    assert E == CongruenceSystem.identity(4)


def test_closure_paradoxical_classes():
    E = closure(4, [(M([0]), M([0, 1, 2])), (M([1]), M([0, 1, 3]))])
    # frozen from the boolean-matrix oracle
    assert [list(c) for c in E.classes] == [
        [1, 7], [2, 11], [3], [4, 13], [5], [6], [8, 14], [9], [10], [12]]
    assert list(E.classes) == naive_closure_partition(4, [(1, 7), (2, 11)])


def test_closure_three_divisibility():
    E = closure(3, [(M([0]), M([1])), (M([1]), M([2]))])
    assert E.class_of(M([0])) == (M([0]), M([1]), M([2]))
    assert E.class_of(M([1, 2])) == (M([0, 1]), M([0, 2]), M([1, 2]))


def test_capacity_error():
    with pytest.raises(CapacityError):
        closure(1, [])
    with pytest.raises(CapacityError):
        closure(17, [])


@settings(max_examples=150, deadline=None)
@given(pair_sets())
def test_closure_matches_oracle(data):
    n, pairs = data
    assert list(closure(n, pairs).classes) == naive_closure_partition(n, pairs)


@settings(max_examples=100, deadline=None)
@given(pair_sets())
def test_closure_idempotent_and_complement_closed(data):
    n, pairs = data
    E = closure(n, pairs)
    assert closure(n, E.pairs()) == E
    for cls in E.classes:
        comps = {E.class_index(complement(m, n)) for m in cls}
        assert len(comps) == 1


def test_non_complementing_examples():
    assert not is_non_complementing(preset("divisibility", 2)[0])
    assert is_non_complementing(preset("divisibility", 3)[0])
    assert is_non_complementing(preset("paradoxical")[0])


def test_non_expanding_examples():
    assert is_non_expanding(CongruenceSystem.identity(5)) == (True, None)
    ok, w = is_non_expanding(preset("paradoxical")[0])
    assert not ok
    assert w == ExpansionWitness(V=(M([0, 1, 2]),), W=(M([0]),))
    assert w.k == 0
    for n in range(3, 9):
        assert is_non_expanding(preset("divisibility", n)[0])[0]


@settings(max_examples=120, deadline=None)
@given(pair_sets(max_n=4))
def test_non_expanding_matches_oracle(data):
    n, pairs = data
    E = closure(n, pairs)
    ok, witness = is_non_expanding(E)
    assert ok == (not naive_is_expanding(n, E.related))
    if witness is not None:
        assert check_expansion_witness(E, witness) is None


def test_witness_checker_rejects_bad_chains():
    E = preset("paradoxical")[0]
    assert check_expansion_witness(E, ExpansionWitness((M([0, 1]),), (M([0]),))) is not None
    assert check_expansion_witness(E, ExpansionWitness((M([0]),), (M([0, 1, 2]),))) is not None


@settings(max_examples=100, deadline=None)
@given(pair_sets())
def test_non_complementing_iff_no_complementary_pairs(data):
    E = closure(*data)
    assert is_non_complementing(E) == (complementary_pairs(E) == [])


def test_complementary_pairs_examples():
    assert complementary_pairs(preset("divisibility", 3)[0]) == []
    assert complementary_pairs(preset("divisibility", 2)[0]) == [(1, 2)]
    assert complementary_pairs(CongruenceSystem.identity(6)) == []


def test_minimize_good_generating():
    E3 = preset("divisibility", 3)[0]
    seed = [(M([0]), M([1])), (M([1]), M([2])), (M([0]), M([2]))]
    assert minimize_good_generating(E3, seed) == [(M([1]), M([2])), (M([0]), M([2]))]
    assert minimize_good_generating(CongruenceSystem.identity(4), []) == []
    E, gens = preset("paradoxical")
    assert minimize_good_generating(E, gens) == gens
    with pytest.raises(GenerationError):
        minimize_good_generating(E3, [(M([0]), M([1]))])


def test_minimize_keeps_complementary_pairs():
    E2, gens = preset("divisibility", 2)
    assert minimize_good_generating(E2, gens) == [(1, 2)]


def test_presets():
    E, g = preset("divisibility", 3)
    assert g == [(M([0]), M([1])), (M([1]), M([2]))]
    E, g = preset("paradoxical", 4)
    assert g == [(M([0]), M([0, 1, 2])), (M([1]), M([0, 1, 3]))]
    assert preset("divisibility", 2)[1] == [(1, 2)]
    with pytest.raises(ValueError):
        preset("paradoxical", 5)
    with pytest.raises(ValueError):
        preset("nonsense", 3)


def test_json_round_trip():
    E = preset("paradoxical")[0]
    assert system_from_json(system_to_json(E)) == E
