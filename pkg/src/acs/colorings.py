"""Greedy colorings and matchings driven by path decompositions.

Each construction walks the layers in order. Interior vertices of a path never
occur in earlier layers, so only path endpoints can carry earlier choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from acs import PreconditionError
from acs.decomp import PathDecomposition, path_edges
from acs.graphs import FiniteGraph


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# -- strongly unfriendly 2-colorings ---------------------------------------------

@dataclass
class UnfriendlyReport:
    strong: list = field(default_factory=list)
    plain: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.strong


def _break_order(L: int) -> list[Optional[int]]:
    """No break first, then break positions nearest the middle."""
    mid = L / 2
    return [None] + sorted(range(2, L), key=lambda b: (abs(b - mid), b))


def _color_path(path, fixed0: Optional[int], fixed1: Optional[int]) -> list[int]:
    L = len(path) - 1
    for start in (0, 1):
        if fixed0 is not None and start != fixed0:
            continue
        for b in _break_order(L):
            seq = [start ^ (i & 1) ^ (b is not None and i >= b) for i in range(L + 1)]
            if fixed1 is not None and seq[-1] != fixed1:
                continue
            return seq
    raise PreconditionError(f"path {path} cannot be colored")


def strongly_unfriendly(g: FiniteGraph, pd: PathDecomposition, min_length: int = 4) -> dict[int, int]:
    """Alternate along each path, breaking parity at most once near the middle.

    Both endpoint neighbors within the path get the opposite color, so a
    vertex only gains a same-colored neighbor on the one path it is interior to.
    ``min_length=5`` gives the stricter length bound.
    """
    if pd.min_length < min_length:
        raise PreconditionError(f"decomposition length {pd.min_length} < {min_length}")
    c: dict[int, int] = {}

    def fixed(v):
        # boundary vertices are never checked, so their color does not bind
        return None if v in g.boundary else c.get(v)

    for layer in pd.layers:
        for path in layer:
            seq = _color_path(path, fixed(path[0]), fixed(path[-1]))
            for v, col in zip(path, seq):
                c.setdefault(v, col)
    for v in g.vertices:
        c.setdefault(v, 0)
    return c


def verify_strongly_unfriendly(g: FiniteGraph, c: Mapping[int, int]) -> UnfriendlyReport:
    report = UnfriendlyReport()
    for v in g.vertices:
        if v in g.boundary:
            continue
        same = sum(c[y] == c[v] for y in g.adj[v])
        if same >= 2:
            report.strong.append(v)
        if same > len(g.adj[v]) - same:
            report.plain.append(v)
    return report


# -- perfect matchings ---------------------------------------------------------

def _check_min_degree(g: FiniteGraph, d: int) -> None:
    for v in g.vertices:
        if v not in g.boundary and g.degree(v) < d:
            raise PreconditionError(f"interior vertex {v} has degree {g.degree(v)} < {d}")


def _path_matching(path, free, urgent) -> list[tuple[int, int]]:
    """Disjoint path edges on free vertices; urgent vertices weigh most."""
    L = len(path) - 1
    big = len(path) + 1
    w = [big if v in urgent else 1 for v in path]
    best = [0] * (L + 2)
    take = [False] * (L + 2)
    # best[i]: optimum using vertices path[:i]
    for i in range(2, L + 2):
        best[i] = best[i - 1]
        a, b = path[i - 2], path[i - 1]
        if a in free and b in free and best[i - 2] + w[i - 2] + w[i - 1] >= best[i]:
            best[i] = best[i - 2] + w[i - 2] + w[i - 1]
            take[i] = True
    out = []
    i = L + 1
    while i >= 2:
        if take[i]:
            out.append((path[i - 2], path[i - 1]))
            i -= 2
        else:
            i -= 1
    return out


def perfect_matching(g: FiniteGraph, pd: PathDecomposition, min_degree: int = 3) -> frozenset:
    """Greedy along the paths: each path takes a heaviest set of disjoint edges
    on its unmatched vertices, where vertices seen for the last time count most.

    A vertex left over inside a path has a third edge on a later path where it
    is an endpoint, so it can still be matched there. That needs degree 3; a
    lower ``min_degree`` is accepted but then coverage is up to the caller.
    """
    _check_min_degree(g, min_degree)
    if pd.min_length < 3:
        raise PreconditionError(f"decomposition length {pd.min_length} < 3")
    paths = pd.paths()
    last = {}
    for i, path in enumerate(paths):
        for v in path:
            last[v] = i
    mate: dict[int, int] = {}
    for i, path in enumerate(paths):
        free = {v for v in path if v not in mate}
        urgent = {v for v in free if last[v] == i and v not in g.boundary}
        for u, v in _path_matching(path, free, urgent):
            mate[u] = v
            mate[v] = u
    return frozenset(_edge(u, v) for u, v in mate.items() if u < v)


def verify_matching(g: FiniteGraph, m) -> Optional[str]:
    edges = set(g.edges)
    seen: set = set()
    for u, v in m:
        if _edge(u, v) not in edges:
            return f"({u}, {v}) is not an edge"
        if u in seen or v in seen:
            return f"edges meet at {u if u in seen else v}"
        seen.update((u, v))
    for v in g.vertices:
        if v not in g.boundary and v not in seen:
            return f"interior vertex {v} is unmatched"
    return None


# -- edge list colorings ----------------------------------------------------------

def edge_list_coloring(g: FiniteGraph, pd: PathDecomposition,
                       lists: Mapping[tuple[int, int], set]) -> dict[tuple[int, int], int]:
    """Per path, color the extreme edges first and then the interior in order.

    The extreme edge with more colored neighbors goes first; interior edges
    see at most two colored edges.
    """
    d = max((g.degree(v) for v in g.vertices), default=0)
    if d < 3:
        raise PreconditionError(f"maximum degree {d} < 3")
    if pd.min_length < 3:
        raise PreconditionError(f"decomposition length {pd.min_length} < 3")
    for e in g.edges:
        if len(lists.get(e, ())) < d:
            raise PreconditionError(f"list of edge {e} has fewer than {d} colors")
    color: dict[tuple[int, int], int] = {}
    at: dict[int, set] = {v: set() for v in g.vertices}

    def busy(e):
        return at[e[0]] | at[e[1]]

    def paint(e):
        free = sorted(set(lists[e]) - busy(e))
        if not free:
            raise PreconditionError(f"no color left for edge {e}")
        color[e] = free[0]
        at[e[0]].add(free[0])
        at[e[1]].add(free[0])

    for layer in pd.layers:
        for path in layer:
            edges = path_edges(path)
            ends = [edges[0]] if len(edges) == 1 else [edges[0], edges[-1]]
            ends.sort(key=lambda e: -len(busy(e)))
            for e in ends:
                paint(e)
            for e in edges[1:-1]:
                paint(e)
    return color


def verify_edge_coloring(g: FiniteGraph, color: Mapping[tuple[int, int], int],
                         lists: Optional[Mapping[tuple[int, int], set]] = None) -> Optional[str]:
    for e in g.edges:
        if e not in color:
            return f"edge {e} is uncolored"
        if lists is not None and color[e] not in lists[e]:
            return f"edge {e} has color {color[e]} outside its list"
    for v in g.vertices:
        cols = [color[_edge(v, y)] for y in g.adj[v]]
        if len(set(cols)) != len(cols):
            return f"two edges at {v} share a color"
    return None


# -- serialization -----------------------------------------------------------

def coloring_to_json(c: Mapping) -> dict:
    out = {}
    for k, v in sorted(c.items()):
        out[f"{k[0]}-{k[1]}" if isinstance(k, tuple) else str(k)] = v
    return out


def matching_to_json(m) -> list:
    return [list(e) for e in sorted(m)]
