"""Finite graphs, action graphs on truncated Cayley balls, nets and
forward-recurrent independent sets.

Vertex ids are nonnegative ints and every "least" or "lex-least" choice in
the package is made in id order. Boundary vertices mark where an infinite
graph was cut off; checks that need full degree or long paths skip them.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from acs import CapacityError, PreconditionError
from acs.words import Letter, Presentation

DEFAULT_VERTEX_CAP = 2_000_000
VERTEX_CAP_ENV = "ACS_VERTEX_CAP"


def vertex_cap() -> int:
    raw = os.environ.get(VERTEX_CAP_ENV)
    return int(raw) if raw else DEFAULT_VERTEX_CAP


@dataclass(frozen=True)
class FiniteGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    boundary: frozenset = frozenset()
    adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        if len(adj) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) has an unknown endpoint")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        if not self.boundary <= adj.keys():
            raise ValueError("boundary contains unknown vertices")
        object.__setattr__(self, "adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]],
              boundary: Iterable[int] = ()) -> "FiniteGraph":
        es = sorted({(u, v) if u < v else (v, u) for u, v in edges})
        return cls(tuple(sorted(vertices)), tuple(es), frozenset(boundary))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_interior(self, v: int) -> bool:
        return v not in self.boundary

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if len(self.adj[v]) == 1]

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        seen = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = _bfs_order(self.adj, v)
            seen.update(comp)
            out.append(sorted(comp))
        return out

    def subgraph(self, edges: Iterable[tuple[int, int]]) -> "FiniteGraph":
        """Edge-induced subgraph; inherits boundary marks on its vertices."""
        es = list(edges)
        vs = {v for e in es for v in e}
        return FiniteGraph.build(vs, es, self.boundary & vs)

    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - len(self.components())


def _bfs_order(adj, start) -> list[int]:
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        for y in adj[order[i]]:
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    return order


def bfs_distances(g: FiniteGraph, sources: Iterable[int], limit: Optional[int] = None,
                  blocked: Optional[set] = None) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in g.adj[x]:
            if y not in dist and (blocked is None or y not in blocked):
                dist[y] = d + 1
                queue.append(y)
    return dist


def distance(g: FiniteGraph, u: int, v: int) -> float:
    """Shortest-path length, ``math.inf`` across components."""
    for x in (u, v):
        if x not in g.adj:
            raise KeyError(f"unknown vertex {x}")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in dist:
                if y == v:
                    return dist[x] + 1
                dist[y] = dist[x] + 1
                queue.append(y)
    return math.inf


def tree_path(g: FiniteGraph, u: int, v: int) -> list[int]:
    """The shortest path from u to v (unique in a forest)."""
    parent = {u: None}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        raise ValueError(f"{u} and {v} are not connected")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


# -- action graphs -----------------------------------------------------------

@dataclass(frozen=True)
class ActionGraph:
    """A finite graph whose edges carry generators.

    ``arcs`` holds ``(x, y, gen)`` meaning generator ``gen`` sends x to y.
    Inverse letters are read off by walking an arc backwards; an involution
    is stored as the two arcs ``(x, y, gen)`` and ``(y, x, gen)``.
    """

    graph: FiniteGraph
    arcs: tuple[tuple[int, int, int], ...]
    labels: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels: dict[tuple[int, int], tuple[int, int]] = {}
        out_seen: set = set()
        in_seen: set = set()
        for x, y, gen in self.arcs:
            if (x, gen) in out_seen or (y, gen) in in_seen:
                raise ValueError(f"generator {gen} is not injective at arc {x}->{y}")
            out_seen.add((x, gen))
            in_seen.add((y, gen))
            if labels.get((y, x)) == (gen, 1):
                # second half of an involution pair
                continue
            if (x, y) in labels:
                raise ValueError(f"two generators on edge ({x}, {y})")
            labels[(x, y)] = (gen, 1)
            labels[(y, x)] = (gen, -1)
        support = {(min(x, y), max(x, y)) for x, y, _ in self.arcs}
        if support != set(self.graph.edges):
            raise ValueError("arcs do not match the edge set")
        object.__setattr__(self, "labels", labels)

    def letter_between(self, x: int, y: int) -> tuple[int, int]:
        """``(gen, sign)`` of the letter sending x to its neighbour y."""
        return self.labels[(x, y)]

    def word_along(self, path: Sequence[int], p: Presentation) -> tuple[Letter, ...]:
        return tuple(p.letter(*self.letter_between(a, b)) for a, b in zip(path, path[1:]))

    def interior_arcs(self) -> list[tuple[int, int, int]]:
        b = self.graph.boundary
        return [a for a in self.arcs if a[0] not in b and a[1] not in b]


def ball_size(p: Presentation, radius: int) -> int:
    letters = len(p.letters())
    if letters <= 1:
        return 1 + min(radius, letters)
    return 1 + sum(letters * (letters - 1) ** (i - 1) for i in range(1, radius + 1))


def cayley_ball(p: Presentation, radius: int, cap: Optional[int] = None) -> ActionGraph:
    """Ball of the Cayley graph of the free product, generators acting on the left.

    Vertex ids follow BFS order with children in letter order; the boundary
    is the sphere of the given radius.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    cap = vertex_cap() if cap is None else cap
    size = ball_size(p, radius)
    if size > cap:
        raise CapacityError(f"ball of radius {radius} has {size} vertices, cap is {cap} "
                            f"(set {VERTEX_CAP_ENV} to raise it)")
    letters = p.letters()
    inv = p.involution
    last: list[Optional[Letter]] = [None]
    depth = [0]
    arcs = []
    edges = []
    i = 0
    while i < len(last):
        if depth[i] < radius:
            banned = p.inverse(last[i]) if last[i] is not None else None
            for a in letters:
                if a == banned:
                    continue
                c = len(last)
                last.append(a)
                depth.append(depth[i] + 1)
                edges.append((i, c))
                if inv[a.gen]:
                    arcs.append((i, c, a.gen))
                    arcs.append((c, i, a.gen))
                elif a.sign > 0:
                    arcs.append((i, c, a.gen))
                else:
                    arcs.append((c, i, a.gen))
        i += 1
    boundary = frozenset(v for v, d in enumerate(depth) if d == radius)
    g = FiniteGraph(tuple(range(len(last))), tuple(edges), boundary)
    return ActionGraph(g, tuple(arcs))


# -- nets ----------------------------------------------------------------------

def spacing(n: int, i: int) -> int:
    return 3 * n * 6 ** i


@dataclass(frozen=True)
class Net:
    stages: tuple[tuple[int, ...], ...]
    n: int

    def spacing(self, i: int) -> int:
        return spacing(self.n, i)


def _eccentricity(adj, v) -> int:
    order = _bfs_order(adj, v)
    dist = {v: 0}
    for x in order:
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
    return max(dist.values())


def build_net(g: FiniteGraph, n: int) -> Net:
    """Stage every vertex: the least stage whose spacing it respects, in id order.

    A stage whose separation ``3 d(i)`` reaches the component diameter holds at
    most one vertex of that component; such stages are filled directly instead
    of by ball searches.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    stages: dict[int, list[int]] = {}
    for comp in g.components():
        # 2 * eccentricity bounds the diameter from above
        diam = 2 * _eccentricity(g.adj, comp[0])
        small = 0
        while 3 * spacing(n, small) < diam:
            small += 1
        blocked = [set() for _ in range(small)]
        big_count = 0
        for v in comp:
            for i in range(small):
                if v not in blocked[i]:
                    stages.setdefault(i, []).append(v)
                    blocked[i].update(bfs_distances(g, [v], limit=3 * spacing(n, i)))
                    break
            else:
                # a big stage is untouched in this component until we use it
                stages.setdefault(small + big_count, []).append(v)
                big_count += 1
    top = max(stages) + 1 if stages else 0
    return Net(tuple(tuple(stages.get(i, ())) for i in range(top)), n)


def check_net(g: FiniteGraph, net: Net) -> Optional[str]:
    """``None`` if the net is valid for g, else the first defect found."""
    seen = set()
    comp_of = {}
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    for i, stage in enumerate(net.stages):
        for v in stage:
            if v not in g.adj:
                return f"stage {i} holds unknown vertex {v}"
            if v in seen:
                return f"vertex {v} occurs in two stages"
            seen.add(v)
        per_comp: dict[int, int] = {}
        for v in stage:
            per_comp[comp_of[v]] = per_comp.get(comp_of[v], 0) + 1
        if all(c == 1 for c in per_comp.values()):
            continue
        gap = 3 * spacing(net.n, i)
        # multi-source BFS: the closest pair of sources meets across some edge
        owner = {v: v for v in stage}
        dist = {v: 0 for v in stage}
        queue = deque(stage)
        half = gap // 2 + 1
        while queue:
            x = queue.popleft()
            if dist[x] >= half:
                continue
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    owner[y] = owner[x]
                    queue.append(y)
        for x in dist:
            for y in g.adj[x]:
                if y in dist and owner[x] != owner[y] and dist[x] + dist[y] + 1 <= gap:
                    return f"stage {i}: {owner[x]} and {owner[y]} are within {gap}"
    missing = [v for v in g.vertices if v not in seen and v not in g.boundary]
    if missing:
        return f"interior vertex {missing[0]} is in no stage"
    return None


# -- functional graphs ---------------------------------------------------------

@dataclass(frozen=True)
class FunctionalGraph:
    """A partial map ``f`` on vertices; sinks are the vertices where f is undefined."""

    vertices: tuple[int, ...]
    f: dict

    @property
    def sinks(self) -> list[int]:
        return [v for v in self.vertices if v not in self.f]

    def support(self) -> FiniteGraph:
        return FiniteGraph.build(self.vertices, self.f.items())

    def sink_of(self) -> dict[int, int]:
        """Sink reached by each vertex; raises on a directed cycle."""
        out: dict[int, int] = {}
        for v in self.vertices:
            trail = []
            x = v
            on_trail = set()
            while x not in out and x in self.f:
                if x in on_trail:
                    raise PreconditionError(f"directed cycle through {x}")
                on_trail.add(x)
                trail.append(x)
                x = self.f[x]
            s = out.get(x, x)
            for y in trail:
                out[y] = s
            out[x] = s
        return out


def forward_recurrent_independent(fg: FunctionalGraph, r: int) -> set[int]:
    """Vertices sharing the sink's colour in a first-fit colouring of the r-th power.

    Members are pairwise more than r apart and every forward orbit ends in a
    member (its sink).
    """
    sink = fg.sink_of()
    g = fg.support()
    colour: dict[int, int] = {}
    for comp in g.components():
        sinks = {sink[v] for v in comp}
        if len(sinks) != 1 or len([v for v in comp if v not in fg.f]) != 1:
            raise PreconditionError(f"component of {comp[0]} does not have exactly one sink")
        if len(comp) == 1 or r >= 2 * _eccentricity(g.adj, comp[0]):
            # all pairs are within r: first-fit gives distinct colours in id order
            for c, v in enumerate(comp):
                colour[v] = c
            continue
        for v in comp:
            near = bfs_distances(g, [v], limit=r)
            used = {colour[u] for u in near if u in colour}
            c = 0
            while c in used:
                c += 1
            colour[v] = c
    return {v for v in fg.vertices if colour[v] == colour[sink[v]]}


# -- serialization -----------------------------------------------------------

def graph_to_json(g, arcs: Optional[Sequence] = None) -> dict:
    if isinstance(g, ActionGraph):
        arcs, g = g.arcs, g.graph
    out = {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edges],
        "boundary": sorted(g.boundary),
    }
    if arcs is not None:
        out["arcs"] = [{"src": x, "dst": y, "gen": gen, "sign": 1} for x, y, gen in arcs]
    return out


def graph_from_json(data: dict):
    """An ActionGraph when arcs are present, else a FiniteGraph."""
    g = FiniteGraph.build(data["vertices"], [tuple(e) for e in data["edges"]], data.get("boundary", ()))
    if "arcs" not in data:
        return g
    arcs = []
    for a in data["arcs"]:
        x, y = int(a["src"]), int(a["dst"])
        if int(a.get("sign", 1)) < 0:
            x, y = y, x
        arcs.append((x, y, int(a["gen"])))
    return ActionGraph(g, tuple(arcs))


def net_to_json(net: Net) -> dict:
    # d(i) grows too fast to list for every stage; the rule is d(i) = 3 n 6**i
    return {"n": net.n, "stages": [list(s) for s in net.stages]}


PALETTE = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray"]


def to_dot(g, edge_colors: Optional[dict] = None, name: str = "G") -> str:
    """DOT text; boundary vertices are dashed and action arcs are labelled."""
    arcs = None
    if isinstance(g, ActionGraph):
        arcs, g = g.arcs, g.graph
    lines = [f"digraph {name} {{" if arcs is not None else f"graph {name} {{"]
    for v in g.vertices:
        style = ' [style=dashed]' if v in g.boundary else ""
        lines.append(f"  {v}{style};")

    def colour(x, y):
        if edge_colors is None:
            return ""
        c = edge_colors.get((min(x, y), max(x, y)))
        return "" if c is None else f", color={PALETTE[c % len(PALETTE)]}"

    if arcs is not None:
        drawn = set()
        for x, y, gen in arcs:
            if (y, x, gen) in drawn:
                continue
            drawn.add((x, y, gen))
            lines.append(f'  {x} -> {y} [label="g{gen}"{colour(x, y)}];')
    else:
        for x, y in g.edges:
            c = colour(x, y)
            lines.append(f"  {x} -- {y}" + (f" [{c[2:]}]" if c else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
