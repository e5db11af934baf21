import random

import pytest

from acs.cfrac import (
    ALPHA,
    BETA,
    GAMMA,
    INF,
    CFExpansion,
    Moebius,
    Surd,
    SurdError,
    cf_expand,
    cf_reciprocal,
    end_selection_ray,
    f_step,
    fixed_points,
    moebius_apply,
    parse_expansion,
    parse_surd,
    tail_equivalent,
    word_matrix,
)
from oracles import cf_digits_decimal

SQRT2 = Surd.sqrt(2)
PHI = Surd.make(1, 1, 5, 2)


def random_surd(rng, negative=None):
    D = rng.choice([2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19])
    x = Surd.make(rng.randint(-60, 60), rng.choice([-1, 1]) * rng.randint(1, 9), D,
                  rng.choice([-1, 1]) * rng.randint(1, 30))
    if negative is True and x.sign() > 0:
        x = -x
    return x


def test_expand_examples():
    assert cf_expand(PHI) == CFExpansion(1, (), (1,))
    assert cf_expand(SQRT2) == CFExpansion(1, (), (2,))
    assert cf_expand(Surd.rational(7, 3)) == CFExpansion(2, (3,), ())
    assert cf_expand(SQRT2.reciprocal()) == CFExpansion(0, (1,), (2,))
    assert cf_expand(PHI - 1) == CFExpansion(0, (), (1,))


def test_expand_matches_decimal_oracle():
    rng = random.Random(11)
    for _ in range(300):
        x = random_surd(rng)
        e = cf_expand(x)
        assert [e.a0] + e.digits(25) == cf_digits_decimal(x.p, x.q, x.D, x.r, 25)
        assert e.value(x.D) == x


def test_surd_basics():
    assert SQRT2 * SQRT2 == Surd.rational(2)
    assert (SQRT2 + 1).floor() == 2 and (-SQRT2).floor() == -2
    assert parse_surd("(3-2*sqrt(8))/5") == Surd.make(3, -4, 2, 5)
    assert parse_surd("sqrt(2)") == SQRT2 and parse_surd("7/3") == Surd.rational(7, 3)
    assert parse_surd("inf") is INF
    assert parse_expansion(str(cf_expand(PHI))) == cf_expand(PHI)
    with pytest.raises(SurdError):
        SQRT2 + Surd.sqrt(3)


def test_f_step_examples():
    assert f_step(SQRT2) == SQRT2 - 1
    assert f_step(SQRT2 - 1) == SQRT2 + 1
    assert f_step(-SQRT2) == 1 - SQRT2
    with pytest.raises(SurdError):
        f_step(Surd.rational(1, 2))


def test_f_step_digit_action():
    rng = random.Random(5)
    for _ in range(500):
        x = random_surd(rng)
        e, fe = cf_expand(x), cf_expand(f_step(x))
        if e.a0 > 0:
            assert fe == CFExpansion(e.a0 - 1, e.preperiod, e.period)
        elif e.a0 == 0:
            d = e.digits(1)[0]
            assert fe.a0 == d and fe.digits(30) == e.digits(31)[1:]
        else:
            assert fe == CFExpansion(e.a0 + 1, e.preperiod, e.period)


def test_reciprocal_examples():
    assert cf_reciprocal(cf_expand(SQRT2)) == cf_expand(SQRT2.reciprocal())
    assert cf_reciprocal(cf_expand(PHI)) == CFExpansion(0, (), (1,))
    with pytest.raises(SurdError):
        cf_reciprocal(cf_expand(Surd.rational(3)))


def test_reciprocal_random():
    rng = random.Random(2)
    for i in range(500):
        # even rounds exercise the displayed identity (x < -1), odd rounds anything
        x = random_surd(rng, negative=i % 2 == 0)
        if i % 2 == 0 and x > -1:
            x = x.reciprocal()
        assert cf_reciprocal(cf_expand(x)) == cf_expand(x.reciprocal())


def test_reciprocal_identity_exact():
    rng = random.Random(3)
    for _ in range(500):
        a, b = rng.randint(-12, -2), rng.randint(1, 12)
        C = random_surd(rng)
        C = C - C.floor()
        lhs = 1 / (a + 1 / (b + C))
        rhs = -1 + 1 / (1 + 1 / ((-a - 2) + 1 / (1 + 1 / ((b - 1) + C))))
        assert lhs == rhs


def random_pgl2_word(rng, length):
    letters = [(ALPHA, 1), (ALPHA, -1), (GAMMA, 1)]
    return word_matrix([rng.choice(letters) for _ in range(length)])


def test_tail_equivalence():
    assert tail_equivalent(cf_expand(SQRT2), cf_expand(SQRT2 + 1))
    assert not tail_equivalent(cf_expand(SQRT2), cf_expand(PHI))
    rng = random.Random(8)
    for _ in range(200):
        x = random_surd(rng)
        M = random_pgl2_word(rng, rng.randint(0, 8))
        assert tail_equivalent(cf_expand(x), cf_expand(moebius_apply(M, x)))
    with pytest.raises(SurdError):
        tail_equivalent(cf_expand(SQRT2), cf_expand(Surd.rational(1)))


def test_moebius_examples():
    assert moebius_apply(ALPHA, SQRT2) == 1 + SQRT2
    assert moebius_apply(BETA, SQRT2) == Surd.make(0, -1, 2, 2)
    assert moebius_apply(Moebius.make(1, 0, 0, 1), PHI) == PHI
    assert moebius_apply(BETA, Surd.rational(0)) is INF
    assert moebius_apply(Moebius.make(2, 1, 1, 1), INF) == Surd.rational(2)
    assert Moebius.make(-1, 0, 0, -1) == Moebius.make(1, 0, 0, 1)
    with pytest.raises(SurdError):
        Moebius.make(1, 1, 1, 1)


def test_fixed_points():
    assert fixed_points(BETA) == []
    assert fixed_points(ALPHA) == [INF]
    assert fixed_points(Moebius.make(2, 1, 1, 1)) == [Surd.make(1, -1, 5, 2), Surd.make(1, 1, 5, 2)]
    rng = random.Random(4)
    for _ in range(100):
        M = random_pgl2_word(rng, rng.randint(1, 8))
        assert fixed_points(M @ BETA @ M.inverse()) == []


def test_end_selection_ray():
    ray = end_selection_ray(SQRT2, 3)
    assert ray == [SQRT2, SQRT2 - 1, SQRT2 + 1, SQRT2]
    assert end_selection_ray(PHI, 1) == [PHI, PHI - 1]
    steps = {ALPHA, ALPHA.inverse(), GAMMA}
    for x, y in zip(ray, ray[1:]):
        assert any(moebius_apply(M, x) == y for M in steps)
