import itertools

import pytest

from acs import PreconditionError
from acs.cfrac import Surd, end_selection_ray, moebius_apply, word_matrix
from acs.core import minimize_good_generating, preset
from acs.psl2 import (
    PSL2_GENERATORS,
    free_generators,
    orbit_ball,
    psl2_demo,
    transfer_ray,
)


def divisibility(n):
    system, seed = preset("divisibility", n)
    return system, minimize_good_generating(system, seed)


def is_path(g, path):
    return len(set(path)) == len(path) and all(b in g.adj[a] for a, b in zip(path, path[1:]))


def test_free_generators_lie_in_gamma2_without_short_relations():
    for k in (1, 2, 3, 4):
        gens = free_generators(k)
        assert len(gens) == k
        for M in gens:
            assert M.det == 1 and M.a % 2 == 1 and M.d % 2 == 1 and M.b % 2 == 0 and M.c % 2 == 0
        letters = [(M, s) for M in gens for s in (1, -1)]
        for length in range(1, 5):
            for word in itertools.product(range(len(letters)), repeat=length):
                if any(letters[a][0] == letters[b][0] and letters[a][1] != letters[b][1]
                       for a, b in zip(word, word[1:])):
                    continue
                assert not word_matrix([letters[i] for i in word]).is_identity()


def test_orbit_ball_is_a_cayley_ball_for_a_free_orbit():
    seed = Surd.sqrt(31)
    ball = orbit_ball(seed, [(M, False) for M in free_generators(2)], 4)
    g = ball.graph.graph
    assert len(ball.points) == 1 + 4 + 12 + 36 + 108 and g.is_forest()
    for x, y, gen in ball.graph.arcs:
        assert moebius_apply(free_generators(2)[gen], ball.points[x]) == ball.points[y]


def test_transfer_ray():
    seed = Surd.sqrt(31)
    sub = orbit_ball(seed, [(M, False) for M in free_generators(2)], 5)
    # a ray already in the ball is unchanged
    inside = [sub.points[v] for v in (0, 1, 5)]
    assert transfer_ray(inside, sub) == [0, 1, 5]
    # a single point goes to its nearest ball point
    assert transfer_ray([seed], sub) == [0]
    # index-2 transfer: the PGL2 f-ray lands on a path of the PSL2 orbit graph
    psl = orbit_ball(seed, PSL2_GENERATORS, 6)
    path = transfer_ray(end_selection_ray(seed, 12), psl)
    assert path[0] == 0 and is_path(psl.graph.graph, path)


def test_demo_three_divisibility():
    system, genset = divisibility(3)
    for res in psl2_demo(system, genset, [Surd.sqrt(2), Surd.sqrt(3)], 8):
        assert res.report.ok and all(res.report.piece_sizes) and len(res.report.piece_sizes) == 3


def test_demo_end_selection_branch():
    system, genset = divisibility(3)
    (res,) = psl2_demo(system, genset, [Surd.sqrt(31)], 6)
    assert res.method == "end-selection" and res.end in res.ball.graph.graph.boundary
    assert res.report.ok and all(res.report.piece_sizes)


def test_demo_rejections():
    system, genset = preset("paradoxical")
    with pytest.raises(PreconditionError):
        psl2_demo(system, genset, [Surd.sqrt(2)], 3)
    system, genset = divisibility(3)
    with pytest.raises(PreconditionError):
        psl2_demo(system, genset, [Surd.rational(1, 2)], 3)
