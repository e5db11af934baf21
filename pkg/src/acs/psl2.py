"""Finite pieces of the modular group action on quadratic irrationals.

Orbit balls of a seed under a free subgroup of PSL2(Z) give action graphs;
the f-orbit of the seed picks an end, which is carried over to the subgroup
and fed to the end-selection decomposition and the realization engine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from acs import CapacityError, PreconditionError
from acs.cfrac import ALPHA, BETA, GAMMA, Moebius, Surd, end_selection_ray, moebius_apply
from acs.core import CongruenceSystem, is_non_complementing, is_non_expanding
from acs.decomp import end_selection_decomposition
from acs.graphs import ActionGraph, FiniteGraph, vertex_cap
from acs.realize import (
    Realization,
    WitnessReport,
    realize_along_decomposition,
    realize_single_orbit,
    verify_realization,
)
from acs.words import Presentation, bad_word_bound

# free basis of Gamma(2), a finite-index free subgroup of PSL2(Z)
A = Moebius.make(1, 2, 0, 1)
B = Moebius.make(1, 0, 2, 1)


def free_generators(k: int) -> list[Moebius]:
    """A free basis of rank k inside Gamma(2).

    For k >= 2: A^(k-1) and A^j B A^-j for j < k - 1, a basis of the kernel of
    the map <A, B> -> Z/(k-1) sending A to 1 and B to 0, so of finite index.
    """
    if k < 1:
        raise ValueError("need at least one generator")
    if k == 1:
        return [A]
    out = [A_power(k - 1)]
    for j in range(k - 1):
        out.append(A_power(j) @ B @ A_power(-j))
    return out


def A_power(j: int) -> Moebius:
    return Moebius.make(1, 2 * j, 0, 1)


PGL2_GENERATORS = [(ALPHA, False), (GAMMA, True)]
PSL2_GENERATORS = [(ALPHA, False), (BETA, True)]


@dataclass
class OrbitBall:
    points: list
    index: dict
    graph: ActionGraph
    depth: dict = field(default_factory=dict)


def orbit_ball(seed: Surd, gens: Sequence[tuple[Moebius, bool]], radius: int,
               cap: Optional[int] = None) -> OrbitBall:
    """BFS ball of the orbit of ``seed``; ``gens`` pairs each matrix with
    whether it is an involution. Points at distance ``radius`` form the boundary."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    cap = vertex_cap() if cap is None else cap
    letters = []
    for gen, (M, invol) in enumerate(gens):
        letters.append((gen, M, 1))
        if not invol:
            letters.append((gen, M.inverse(), -1))
    points = [seed]
    index = {seed: 0}
    depth = {0: 0}
    arcs: set = set()
    edges: set = set()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        if depth[x] == radius:
            continue
        for gen, M, sign in letters:
            y_pt = moebius_apply(M, points[x])
            y = index.get(y_pt)
            if y is None:
                if len(points) >= cap:
                    raise CapacityError(f"orbit ball exceeds {cap} vertices")
                y = len(points)
                points.append(y_pt)
                index[y_pt] = y
                depth[y] = depth[x] + 1
                queue.append(y)
            if x == y:
                raise PreconditionError(f"{points[x]} is fixed by generator {gen}")
            src, dst = (x, y) if sign > 0 else (y, x)
            arcs.add((src, dst, gen))
            if gens[gen][1]:
                arcs.add((dst, src, gen))
            edges.add((min(x, y), max(x, y)))
    boundary = [v for v, d in depth.items() if d == radius]
    g = FiniteGraph.build(range(len(points)), sorted(edges), boundary)
    return OrbitBall(points, index, ActionGraph(g, tuple(sorted(arcs))), depth)


def _bfs_path(g: FiniteGraph, u: int, v: int) -> list[int]:
    """Shortest path, preferring smaller vertex ids at each step."""
    parent = {u: None}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for y in sorted(g.adj[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        raise PreconditionError(f"{u} and {v} are not connected")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def _erase_loops(path: Sequence[int]) -> list[int]:
    out: list[int] = []
    where: dict[int, int] = {}
    for v in path:
        if v in where:
            cut = where[v]
            for w in out[cut + 1:]:
                del where[w]
            out = out[:cut + 1]
        else:
            where[v] = len(out)
            out.append(v)
    return out


def nearest_in(ball: OrbitBall, x: Surd, ambient: Sequence[tuple[Moebius, bool]], limit: int = 64) -> int:
    """Closest point of the ball to x in the ambient generator graph (ties: least id)."""
    if x in ball.index:
        return ball.index[x]
    letters = []
    for M, invol in ambient:
        letters.append(M)
        if not invol:
            letters.append(M.inverse())
    frontier = [x]
    seen = {x}
    for _ in range(limit):
        nxt = []
        hits = []
        for pt in frontier:
            for M in letters:
                y = moebius_apply(M, pt)
                if y in seen:
                    continue
                seen.add(y)
                if y in ball.index:
                    hits.append(ball.index[y])
                nxt.append(y)
        if hits:
            return min(hits)
        frontier = nxt
    raise PreconditionError(f"no point of the ball within {limit} ambient steps of {x}")


def transfer_ray(ray: Sequence[Surd], ball: OrbitBall,
                 ambient: Sequence[tuple[Moebius, bool]] = PGL2_GENERATORS) -> list[int]:
    """Move each ray point to its nearest ball point, join consecutive images
    by lex-least shortest paths and erase loops."""
    if not ball.points:
        raise PreconditionError("empty component")
    images = [nearest_in(ball, x, ambient) for x in ray]
    walk = [images[0]]
    for a, b in zip(images, images[1:]):
        walk.extend(_bfs_path(ball.graph.graph, a, b)[1:])
    return _erase_loops(walk)


def extend_to_boundary(ball: OrbitBall, path: Sequence[int]) -> int:
    """Push the end of a path outward, least id first, until the boundary."""
    g = ball.graph.graph
    v = path[-1]
    while v not in g.boundary:
        v = min(y for y in g.adj[v] if ball.depth[y] > ball.depth[v])
    return v


@dataclass
class DemoResult:
    seed: Surd
    ball: OrbitBall
    realization: Realization
    report: WitnessReport
    end: Optional[int]
    method: str


def psl2_demo(system: CongruenceSystem, genset: Sequence[tuple[int, int]], seeds: Sequence[Surd],
              radius: int, cap: Optional[int] = None) -> list[DemoResult]:
    """Realize the system on truncated orbits of the seeds under a free
    finite-index subgroup of PSL2(Z), one generator per pair of the genset."""
    if not is_non_complementing(system):
        raise PreconditionError("system is complementing")
    ok, _ = is_non_expanding(system)
    if not ok:
        raise PreconditionError("system is expanding")
    # a non-complementing system has no pair (S, complement S), so no involutions
    p = Presentation.from_pairs(system.n, genset)
    r = bad_word_bound(p)
    gens = [(M, False) for M in free_generators(p.k)]
    out = []
    for seed in seeds:
        if seed.inf or seed.is_rational:
            raise PreconditionError(f"seed {seed} is rational")
        ball = orbit_ball(seed, gens, radius, cap)
        g = ball.graph.graph
        if not g.is_forest():
            real = realize_single_orbit(ball.graph, p)
            out.append(DemoResult(seed, ball, real, verify_realization(ball.graph, p, real), None, "single-orbit"))
            continue
        path = transfer_ray(end_selection_ray(seed, radius), ball)
        end = extend_to_boundary(ball, path)
        pd = end_selection_decomposition(g, [end], r)
        real = realize_along_decomposition(ball.graph, p, pd)
        out.append(DemoResult(seed, ball, real, verify_realization(ball.graph, p, real), end, "end-selection"))
    return out
