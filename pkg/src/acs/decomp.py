"""Spindly trees and path decompositions of finite forests.

A path is a tuple of vertex ids. A path decomposition is a list of layers;
each layer is a tuple of vertex-disjoint paths, and together the paths use
every edge of the graph exactly once. Layers are end-ordered: a vertex met
again in a later layer is an endpoint of the later path.

Paths touching the boundary of a truncated graph may be shorter than the
requested minimum; this waiver is recorded on the decomposition.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from acs import PreconditionError
from acs.graphs import (
    FiniteGraph,
    FunctionalGraph,
    Net,
    build_net,
    forward_recurrent_independent,
    spacing,
    tree_path,
)

Path = tuple[int, ...]


def canonical(path: Sequence[int]) -> Path:
    path = tuple(path)
    return path if path[0] <= path[-1] else path[::-1]


def path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) if a < b else (b, a) for a, b in zip(path, path[1:])]


@dataclass(frozen=True)
class PathDecomposition:
    layers: tuple[tuple[Path, ...], ...]
    min_length: int
    waiver: bool = True

    def paths(self) -> list[Path]:
        return [p for layer in self.layers for p in layer]

    def max_length(self) -> int:
        return max((len(p) - 1 for p in self.paths()), default=0)


@dataclass(frozen=True)
class SpindlyCert:
    distinguished: Optional[int]
    n: int


# -- spindly trees -------------------------------------------------------------

def _check_tree(t: FiniteGraph) -> None:
    if not t.vertices:
        raise PreconditionError("empty tree")
    if len(t.edges) != len(t.vertices) - 1 or len(t.components()) != 1:
        raise PreconditionError("graph is not a tree")


def _leaves_within(t: FiniteGraph, src: int, limit: int, targets: set) -> dict[int, int]:
    """Distances from src to members of ``targets`` at distance at most ``limit``."""
    out = {}
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x != src and x in targets:
            out[x] = dist[x]
        if dist[x] >= limit:
            continue
        for y in t.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return out


def check_spindly_cert(t: FiniteGraph, cert: SpindlyCert) -> Optional[str]:
    """``None`` if ``cert`` witnesses that t is n-spindly; pairs with boundary leaves are exempt."""
    n = cert.n
    nb = {v for v in t.leaves() if v not in t.boundary}
    l = cert.distinguished
    if l is not None and l not in t.adj:
        return f"distinguished vertex {l} is not in the tree"
    for x in sorted(nb):
        if x == l:
            continue
        for y, d in _leaves_within(t, x, 2 * n, nb).items():
            if y != l and d <= 2 * n:
                return f"leaves {x} and {y} are {d} apart"
    if l is not None:
        for y, d in _leaves_within(t, l, n - 1, nb).items():
            return f"leaf {y} is {d} from the distinguished leaf"
    return None


def is_n_spindly(t: FiniteGraph, n: int) -> Optional[SpindlyCert]:
    """A certificate, preferring no distinguished leaf, then the least valid one."""
    _check_tree(t)
    nb = {v for v in t.leaves() if v not in t.boundary}
    close = []
    for x in sorted(nb):
        for y, d in _leaves_within(t, x, 2 * n, nb).items():
            if x < y:
                close.append((x, y))
    if not close:
        return SpindlyCert(None, n)
    candidates = set(close[0])
    for pair in close[1:]:
        candidates &= set(pair)
    for l in sorted(candidates):
        cert = SpindlyCert(l, n)
        if check_spindly_cert(t, cert) is None:
            return cert
    return None


def _nearest_leaf_path(t: FiniteGraph, start: int, first: Optional[int],
                       prefer: set) -> Optional[Path]:
    """Lex-least shortest path from ``start`` to a leaf, preferring leaves in ``prefer``.

    With ``first`` set, the search only enters the branch through that
    neighbour (the region hanging off ``start``).
    """
    best = {True: None, False: None}
    parent = {start: None}
    frontier = [start] if first is None else None
    if first is not None:
        parent[first] = start
        frontier = [first]
    while frontier:
        found = {True: [], False: []}
        for x in frontier:
            if x != start and len(t.adj[x]) == 1:
                found[x in prefer].append(x)
        for key in (True, False):
            if found[key] and best[key] is None:
                paths = []
                for leaf in found[key]:
                    p = [leaf]
                    while p[-1] != start:
                        p.append(parent[p[-1]])
                    paths.append(tuple(p[::-1]))
                best[key] = min(paths)
        if best[True] is not None:
            break
        nxt = []
        for x in frontier:
            for y in t.adj[x]:
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    return best[True] if best[True] is not None else best[False]


def _top_path(t: FiniteGraph) -> Optional[Path]:
    """Lex-least shortest leaf-to-leaf path, preferring pairs of non-boundary leaves."""
    leaves = t.leaves()
    if len(leaves) < 2:
        return None
    nb = [v for v in leaves if v not in t.boundary]
    if len(nb) >= 2:
        starts, targets = nb, set(nb)
    elif len(nb) == 1:
        starts, targets = nb, set(leaves)
    else:
        starts, targets = leaves, set(leaves)
    best = None
    for x in starts:
        limit = math.inf if best is None else len(best) - 1
        parent = {x: None}
        frontier = [x]
        depth = 0
        while frontier and depth < limit:
            depth += 1
            nxt = []
            for u in frontier:
                for y in t.adj[u]:
                    if y not in parent:
                        parent[y] = u
                        nxt.append(y)
            hits = [y for y in nxt if y in targets]
            if hits:
                for y in hits:
                    p = [y]
                    while p[-1] != x:
                        p.append(parent[p[-1]])
                    cand = canonical(p)
                    if best is None or (len(cand), cand) < (len(best), best):
                        best = cand
                break
            frontier = nxt
    return best


def _spindly_paths(t: FiniteGraph, distinguished: Optional[int]) -> list[Path]:
    """The recursive split: a shortest leaf path, then each hanging region in turn."""
    if not t.edges:
        return []
    nb = {v for v in t.leaves() if v not in t.boundary}
    if distinguished is None:
        p0 = _top_path(t)
    else:
        p0 = _nearest_leaf_path(t, distinguished, None, nb - {distinguished})
    out: list[Path] = []
    used = set(p0)
    # depth-first; a path's vertices are claimed when it is pushed, so
    # a vertex shared with a pending sibling never hangs a second region
    stack: list[Path] = [p0]
    while stack:
        p = stack.pop()
        out.append(canonical(p))
        sub = []
        for v in p:
            for z in t.adj[v]:
                if z not in used:
                    q = _nearest_leaf_path(t, v, z, nb)
                    used.update(q)
                    sub.append(q)
        stack.extend(reversed(sub))
    return out


def spindly_paths(t: FiniteGraph, cert: SpindlyCert) -> list[Path]:
    """End-ordered edge-disjoint paths covering t, each of length at least n
    unless it ends on the boundary."""
    _check_tree(t)
    problem = check_spindly_cert(t, cert)
    if problem is not None:
        raise PreconditionError(f"invalid certificate: {problem}")
    return _spindly_paths(t, cert.distinguished)


# -- spindly stages ------------------------------------------------------------

class _Components:
    """Union-find over vertices of H, tracking the stage each component last changed."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.level: dict[int, int] = {}
        self.count: dict[int, int] = {}

    def __contains__(self, v):
        return v in self.parent

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_graph(self, edges, stage):
        touched = set()
        for u, v in edges:
            for x in (u, v):
                if x not in self.parent:
                    self.parent[x] = x
                    self.level[x] = stage
                    self.count[stage] = self.count.get(stage, 0) + 1
                touched.add(self.find(x))
        roots = set()
        for u, v in edges:
            ru, rv = self.find(u), self.find(v)
            if ru != rv:
                self.parent[max(ru, rv)] = min(ru, rv)
        for r in touched:
            if self.parent[r] == r:
                roots.add(r)
            lvl = self.level[r]
            self.count[lvl] -= 1
            if not self.count[lvl]:
                del self.count[lvl]
        for r in roots:
            self.level[r] = stage
            self.count[stage] = self.count.get(stage, 0) + 1


def _escape_path(g: FiniteGraph, x: int, n: int, blocked) -> Path:
    """Lex-least path of length n from x avoiding ``blocked``; stops early on the boundary."""
    best_fallback = (x,)
    path = [x]
    on_path = {x}
    iters = [iter(g.adj[x])]
    while iters:
        if len(path) - 1 == n or (len(path) > 1 and path[-1] in g.boundary):
            return tuple(path)
        if len(path) > len(best_fallback):
            best_fallback = tuple(path)
        y = next(iters[-1], None)
        if y is None:
            iters.pop()
            on_path.discard(path.pop())
            continue
        if y in on_path or blocked(y):
            continue
        path.append(y)
        on_path.add(y)
        iters.append(iter(g.adj[y]))
    return best_fallback


def _capped_spacing(n: int, k: int, cap: int) -> int:
    """min(d(k), cap) without building 6**k for large k."""
    d = spacing(n, 0)
    for _ in range(k):
        if d >= cap:
            return cap
        d *= 6
    return min(d, cap)


def spindly_decompose(g: FiniteGraph, n: int, net: Optional[Net] = None) -> list[FiniteGraph]:
    """Edge-disjoint stages G_0, G_1, ... whose components are n-spindly trees.

    Stage s grows a cluster around each net point x of stage s: for each
    earlier level k (newest first) it adds, from the cluster, the shortest path
    within d(k) through unused vertices to every component of H created at
    stage k. A net point that ends up isolated or as a leaf of its cluster
    then gets an escape path of length n.
    """
    if not g.is_forest():
        raise PreconditionError("graph has a cycle")
    net = build_net(g, n) if net is None else net
    H = _Components()
    stages: list[FiniteGraph] = []
    for s, A in enumerate(net.stages):
        stage_edges: list[tuple[int, int]] = []
        stage_vertices: set = set()
        for x in A:
            if x in H or x in stage_vertices:
                continue
            cluster = {x}
            cluster_edges: list[tuple[int, int]] = []
            for k in sorted(H.count, reverse=True):
                want = H.count[k]
                reached = set()
                limit = _capped_spacing(n, k, len(g.vertices))
                sources = sorted(v for v in cluster if v not in H)
                parent = {v: None for v in sources}
                dist = {v: 0 for v in sources}
                queue = deque(sources)
                new_paths = []
                while queue and len(reached) < want:
                    u = queue.popleft()
                    if dist[u] >= limit:
                        continue
                    for y in g.adj[u]:
                        if y in parent or y in stage_vertices:
                            continue
                        if y in H:
                            root = H.find(y)
                            if H.level[root] == k and root not in reached:
                                reached.add(root)
                                p = [y, u]
                                while parent[p[-1]] is not None:
                                    p.append(parent[p[-1]])
                                new_paths.append(p)
                            continue
                        if y in cluster:
                            continue
                        parent[y] = u
                        dist[y] = dist[u] + 1
                        queue.append(y)
                for p in new_paths:
                    cluster.update(p)
                    cluster_edges.extend(path_edges(p))
            deg = sum(1 for e in cluster_edges if x in e)
            if deg <= 1:
                p = _escape_path(g, x, n, lambda y: y in cluster or y in stage_vertices or y in H)
                cluster.update(p)
                cluster_edges.extend(path_edges(p))
            stage_edges.extend(cluster_edges)
            stage_vertices |= cluster
        stage = g.subgraph(sorted(set(stage_edges)))
        H.add_graph(stage.edges, s)
        stages.append(stage)
    return stages


def _check_degrees(g: FiniteGraph) -> None:
    for v in g.vertices:
        if v not in g.boundary and len(g.adj[v]) < 2:
            raise PreconditionError(f"interior vertex {v} has degree {len(g.adj[v])}; mark it as boundary")


# -- layering --------------------------------------------------------------------

def _rank_layers(sequences: Iterable[Sequence[Path]], start_rank: Optional[dict] = None) -> list[list[Path]]:
    """Derivative extraction: a path's layer is one more than the newest earlier
    path sharing a vertex with it. Sequences are listed oldest first."""
    last: dict[int, int] = {}
    layers: list[list[Path]] = []
    for seq in sequences:
        for p in seq:
            if start_rank is not None and p in start_rank:
                r = start_rank[p]
            else:
                r = max((last.get(v, -1) for v in p), default=-1) + 1
            while len(layers) <= r:
                layers.append([])
            layers[r].append(p)
            for v in p:
                if last.get(v, -1) < r:
                    last[v] = r
    return [sorted(layer) for layer in layers if layer]


def path_decomposition(g: FiniteGraph, n: int) -> PathDecomposition:
    """Net, spindly stages, spindly paths per component, then layering."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_degrees(g)
    stages = spindly_decompose(g, n)
    sequences = []
    for stage in stages:
        for comp in stage.components():
            if len(comp) < 2:
                continue
            edges = [e for e in stage.edges if e[0] in set(comp)]
            t = stage.subgraph(edges)
            cert = is_n_spindly(t, n)
            if cert is None:
                raise PreconditionError(f"stage component at {comp[0]} is not {n}-spindly")
            sequences.append(_spindly_paths(t, cert.distinguished))
    covered = sum(len(p) - 1 for seq in sequences for p in seq)
    if covered != len(g.edges):
        raise PreconditionError(f"stages cover {covered} of {len(g.edges)} edges")
    layers = _rank_layers(sequences)
    return PathDecomposition(tuple(tuple(l) for l in layers), n, True)


def split_lengths(length: int, n: int) -> list[int]:
    """Piece lengths for a path: as equal as possible, earlier pieces longer."""
    if length <= 2 * n:
        return [length]
    k = -(-length // (2 * n))
    q, rem = divmod(length, k)
    return [q + 1] * rem + [q] * (k - rem)


def split_path(path: Path, n: int) -> list[Path]:
    out = []
    i = 0
    for size in split_lengths(len(path) - 1, n):
        out.append(tuple(path[i:i + size + 1]))
        i += size
    return out


def normalize_lengths(pd: PathDecomposition, n: int) -> PathDecomposition:
    """Cut long paths into pieces of length in [n, 2n] and re-layer.

    Pieces from one layer are first-fit coloured by intersection; colour
    classes become consecutive layers.
    """
    if pd.min_length < n:
        raise PreconditionError(f"decomposition has minimum length {pd.min_length} < {n}")
    layers = []
    for layer in pd.layers:
        pieces = [piece for p in layer for piece in split_path(p, n)]
        colour_of_vertex: dict[int, set] = {}
        by_colour: dict[int, list[Path]] = {}
        for piece in pieces:
            used = set()
            for v in piece:
                used |= colour_of_vertex.get(v, set())
            c = 0
            while c in used:
                c += 1
            for v in piece:
                colour_of_vertex.setdefault(v, set()).add(c)
            by_colour.setdefault(c, []).append(piece)
        for c in sorted(by_colour):
            layers.append(tuple(sorted(canonical(q) for q in by_colour[c])))
    return PathDecomposition(tuple(layers), pd.min_length, pd.waiver)


# -- end selections ----------------------------------------------------------------

def _regions(g: FiniteGraph, comp: list[int], walls: set,
             covered: set) -> list[tuple[list[int], list[tuple[int, int]]]]:
    """Pieces of a component cut at ``walls``: vertices reachable without
    passing through a wall, plus the wall vertices they touch. Edges between
    two walls that are not yet ``covered`` form pieces of their own."""
    seen = set()
    out = []
    comp_set = set(comp)
    for v in comp:
        if v in walls or v in seen:
            continue
        verts = [v]
        seen.add(v)
        touched = set()
        i = 0
        while i < len(verts):
            x = verts[i]
            for y in g.adj[x]:
                if y in walls:
                    touched.add(y)
                elif y not in seen:
                    seen.add(y)
                    verts.append(y)
            i += 1
        inner = set(verts)
        edges = sorted({(min(x, y), max(x, y)) for x in verts for y in g.adj[x] if y in inner or y in touched})
        out.append((sorted(inner | touched), edges))
    # edges joining two wall vertices directly
    for x in sorted(walls & comp_set):
        for y in g.adj[x]:
            if y in walls and x < y and (x, y) not in covered:
                out.append(([x, y], [(x, y)]))
    return out


def _parent_map(g: FiniteGraph, root: int) -> dict[int, int]:
    f = {}
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                f[y] = x
                queue.append(y)
    return f


def end_selection_decomposition(g: FiniteGraph, ends: Iterable[int], n: int) -> PathDecomposition:
    """Decompose a forest with one or two designated boundary ends per component.

    One end: orient everything toward the end, pick a forward-recurrent
    4n-independent set A, lay length-n paths from A toward the end and
    decompose the pieces in between as spindly trees whose distinguished leaf
    is their forward-most vertex. Two ends: cut the geodesic between them into
    pieces of length in [n, 2n] and decompose what hangs off it likewise.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not g.is_forest():
        raise PreconditionError("graph has a cycle")
    _check_degrees(g)
    ends = sorted(set(ends))
    for e in ends:
        if e not in g.adj:
            raise PreconditionError(f"designated vertex {e} is not in the graph")
        if e not in g.boundary:
            raise PreconditionError(f"designated vertex {e} is not on the boundary")
    first: list[Path] = []
    start_rank: dict[Path, int] = {}
    later: list[list[Path]] = []
    for comp in g.components():
        mine = [e for e in ends if e in set(comp)]
        if len(mine) not in (1, 2):
            raise PreconditionError(f"component of {comp[0]} has {len(mine)} designated ends")
        if len(mine) == 1:
            e = mine[0]
            f = _parent_map(g, e)
            fg = FunctionalGraph(tuple(comp), f)
            A = forward_recurrent_independent(fg, 4 * n)
            walls = set(A)
            for a in sorted(A):
                p = [a]
                while len(p) <= n and p[-1] in f:
                    p.append(f[p[-1]])
                walls.update(p)
                if len(p) > 1:
                    q = canonical(p)
                    first.append(q)
                    start_rank[q] = 0
            top_of = lambda verts: _forward_most(verts, f)
        else:
            geo = tree_path(g, mine[0], mine[1])
            walls = set(geo)
            f = _parent_map(g, mine[0])
            for i, piece in enumerate(split_path(tuple(geo), n)):
                q = canonical(piece)
                first.append(q)
                start_rank[q] = i % 2
            top_of = lambda verts, w=walls: next(v for v in verts if v in w)
        covered = {e for q in first for e in path_edges(q)}
        for verts, edges in _regions(g, comp, walls, covered):
            t = g.subgraph(edges)
            if not t.edges:
                continue
            later.append(_spindly_paths(t, top_of(verts)))
    layers = _rank_layers([first] + later, start_rank)
    return PathDecomposition(tuple(tuple(l) for l in layers), n, True)


def _forward_most(verts: list[int], f: dict[int, int]) -> int:
    vs = set(verts)
    return next(v for v in verts if f.get(v) not in vs)


# -- verification ----------------------------------------------------------------

def verify_path_decomposition(g: FiniteGraph, pd: PathDecomposition) -> Optional[str]:
    """``None`` if every invariant holds, else a description of the first violation."""
    seen_before: set = set()
    used_edges: set = set()
    edge_set = set(g.edges)
    for j, layer in enumerate(pd.layers):
        in_layer: set = set()
        for p in layer:
            if len(p) < 2:
                return f"layer {j}: path {p} has no edges"
            if len(set(p)) != len(p):
                return f"layer {j}: path {p} is not simple"
            for e in path_edges(p):
                if e not in edge_set:
                    return f"layer {j}: {e} is not an edge"
                if e in used_edges:
                    return f"edge {e} is covered twice"
                used_edges.add(e)
            for v in p:
                if v in in_layer:
                    return f"layer {j}: paths share vertex {v}"
            in_layer.update(p)
            for v in p[1:-1]:
                if v in seen_before:
                    return f"layer {j}: interior vertex {v} of {p} occurs in an earlier layer"
            length = len(p) - 1
            waived = pd.waiver and (p[0] in g.boundary or p[-1] in g.boundary)
            if length < pd.min_length and not waived:
                return f"layer {j}: path {p} has length {length} < {pd.min_length}"
        seen_before |= in_layer
    if len(used_edges) != len(edge_set):
        missing = sorted(edge_set - used_edges)[0]
        return f"edge {missing} is not covered"
    return None


# -- serialization ---------------------------------------------------------------

def decomposition_to_json(pd: PathDecomposition) -> dict:
    return {"minLength": pd.min_length, "waiver": pd.waiver,
            "layers": [[list(p) for p in layer] for layer in pd.layers]}


def decomposition_from_json(data: dict) -> PathDecomposition:
    layers = tuple(tuple(tuple(int(v) for v in p) for p in layer) for layer in data["layers"])
    return PathDecomposition(layers, int(data["minLength"]), bool(data.get("waiver", True)))


def layer_colors(pd: PathDecomposition) -> dict[tuple[int, int], int]:
    """Edge -> layer index, for DOT export."""
    return {e: j for j, layer in enumerate(pd.layers) for p in layer for e in path_edges(p)}
