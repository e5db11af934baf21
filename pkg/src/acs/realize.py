"""Realizations: assignments of vertices to pieces respecting the relations.

For a relation pair ``(S_i, T_i)`` and an arc ``x -> y`` of generator i the
requirement is ``x in S_i  iff  y in T_i``, where "x in S" means x is
assigned a piece of S. Only arcs with both ends off the boundary are
checked.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from acs import ACSError, PreconditionError
from acs.core import complement
from acs.decomp import PathDecomposition
from acs.graphs import ActionGraph
from acs.words import Presentation, bad_words_by_length, lex_least_labeling, transfer


class SeedConflictError(ACSError):
    pass


class NonMinimalGensetError(ACSError):
    """A cycle cannot be labeled; the genset has a removable pair."""

    def __init__(self, pair_index: Optional[int], message: str):
        super().__init__(message)
        self.pair_index = pair_index


@dataclass(frozen=True)
class Realization:
    n: int
    assignment: dict

    def pieces(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for v in sorted(self.assignment):
            out[self.assignment[v]].append(v)
        return out


@dataclass
class WitnessReport:
    violations: dict = field(default_factory=dict)
    piece_sizes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def count(self) -> int:
        return sum(len(v) for v in self.violations.values())


def verify_realization(g: ActionGraph, p: Presentation, r: Realization) -> WitnessReport:
    missing = [v for v in g.graph.vertices if v not in r.assignment]
    if missing:
        raise PreconditionError(f"vertex {missing[0]} is unassigned")
    report = WitnessReport({i: [] for i in range(p.k)}, [0] * p.n)
    for v in g.graph.vertices:
        report.piece_sizes[r.assignment[v]] += 1
    a = r.assignment
    for x, y, gen in g.interior_arcs():
        s, t = p.pairs[gen]
        if bool(s >> a[x] & 1) != bool(t >> a[y] & 1):
            report.violations[gen].append((x, y))
    return report


# -- along a path decomposition ----------------------------------------------

def realize_along_decomposition(g: ActionGraph, p: Presentation, pd: PathDecomposition,
                                seed: Optional[Mapping[int, int]] = None) -> Realization:
    """Label each path in layer order with the lex-least labeling matching the
    pieces already fixed at its endpoints.

    Boundary endpoints are only held to seeds: the arc joining them to the
    path is never checked, so an earlier label there does not constrain.
    """
    if pd.min_length >= 1 and p.k:
        if bad_words_by_length(p, pd.min_length)[-1] is not None:
            raise PreconditionError(f"bad words of length {pd.min_length} exist; decompose with longer paths")
    seed = dict(seed or {})
    layer0_ends = {v for path in (pd.layers[0] if pd.layers else ()) for v in (path[0], path[-1])}
    for v, piece in seed.items():
        if v not in layer0_ends:
            raise SeedConflictError(f"seeded vertex {v} is not an endpoint of a layer-0 path")
        if not 0 <= piece < p.n:
            raise SeedConflictError(f"seed piece {piece} out of range")
    boundary = g.graph.boundary
    assignment: dict[int, int] = dict(seed)
    for j, layer in enumerate(pd.layers):
        for path in layer:
            word = g.word_along(path, p)

            def fixed(v):
                if v in seed or v not in boundary:
                    return assignment.get(v)
                return None

            labels = lex_least_labeling(word, p, fixed(path[0]), fixed(path[-1]))
            if labels is None:
                if j == 0 and (path[0] in seed or path[-1] in seed):
                    raise SeedConflictError(f"seeds at the ends of {path} admit no labeling")
                raise PreconditionError(f"no labeling of path {path}: its word is bad")
            for v, piece in zip(path, labels):
                assignment.setdefault(v, piece)
    for v in g.graph.vertices:
        assignment.setdefault(v, 0)
    return Realization(p.n, assignment)


# -- single orbits with at most one cycle --------------------------------------

def _cycle(g: ActionGraph, comp: list[int]) -> Optional[list[int]]:
    """Vertices of the unique cycle in order, starting at the least one."""
    adj = g.graph.adj
    deg = {v: len(adj[v]) for v in comp}
    queue = deque(v for v in comp if deg[v] <= 1)
    gone = set()
    while queue:
        v = queue.popleft()
        if v in gone:
            continue
        gone.add(v)
        for y in adj[v]:
            if y not in gone:
                deg[y] -= 1
                if deg[y] == 1:
                    queue.append(y)
    rest = [v for v in comp if v not in gone]
    if not rest:
        return None
    start = rest[0]
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = min(y for y in adj[cur] if y not in gone and y != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _case2_pair(word, p: Presentation) -> Optional[int]:
    """Generator of g_i for the shortest window V(i) ~ V(j) (j - i >= 2) of the V chain."""
    n = p.n
    xy = [transfer(a, p) for a in word]
    V = [xy[0][0]]
    for x, y in xy:
        V.append(y if V[-1] == x else complement(y, n))
    best = None
    for span in range(2, len(V)):
        for i in range(len(V) - span):
            j = i + span
            if V[i] == V[j] or V[i] == complement(V[j], n):
                best = i
                break
        if best is not None:
            return word[best].gen
    return None


def realize_single_orbit(g: ActionGraph, p: Presentation) -> Realization:
    """Realize on a graph whose components have at most one cycle each.

    The cycle is labeled exactly, starting from the break point of Case 1
    when there is one; the rest is filled greedily outward in BFS order with
    the least admissible piece.
    """
    adj = g.graph.adj
    assignment: dict[int, int] = {}
    for comp in g.graph.components():
        edges = sum(len(adj[v]) for v in comp) // 2
        if edges > len(comp):
            raise PreconditionError(f"component of {comp[0]} has more than one cycle")
        cyc = _cycle(g, comp)
        if cyc is None:
            assignment[comp[0]] = 0
            roots = [comp[0]]
        else:
            L = len(cyc)
            word = [p.letter(*g.letter_between(cyc[i], cyc[(i + 1) % L])) for i in range(L)]
            xy = [transfer(a, p) for a in word]
            brk = 0
            for i in range(L):
                x_next = xy[(i + 1) % L][0]
                y_here = xy[i][1]
                if x_next not in (y_here, complement(y_here, p.n)):
                    brk = (i + 1) % L
                    break
            rot = cyc[brk:] + cyc[:brk]
            rword = word[brk:] + word[:brk]
            labels = None
            for m in range(p.n):
                labels = lex_least_labeling(rword, p, m, m)
                if labels is not None:
                    break
            if labels is None:
                pair = _case2_pair(rword, p)
                raise NonMinimalGensetError(pair, f"cycle through {cyc[0]} admits no labeling; "
                                                  f"pair {pair} of the genset is removable")
            for v, piece in zip(rot, labels):
                assignment[v] = piece
            roots = rot
        queue = deque(roots)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in assignment:
                    continue
                gen, sign = g.letter_between(x, y)
                xs, ys = transfer(p.letter(gen, sign), p)
                inside = bool(xs >> assignment[x] & 1)
                assignment[y] = next(k for k in range(p.n) if bool(ys >> k & 1) == inside)
                queue.append(y)
    return Realization(p.n, assignment)


# -- serialization -----------------------------------------------------------

def realization_to_json(r: Realization) -> dict:
    return {"pieces": r.n, "assignment": {str(v): k for v, k in sorted(r.assignment.items())}}


def realization_from_json(data: dict) -> Realization:
    return Realization(int(data["pieces"]), {int(v): int(k) for v, k in data["assignment"].items()})


def report_to_json(report: WitnessReport) -> dict:
    return {
        "ok": report.ok,
        "violations": {str(i): [list(a) for a in arcs] for i, arcs in report.violations.items()},
        "pieceSizes": report.piece_sizes,
    }
