"""Abstract systems of congruences on the proper subsets of ``{0..n-1}``.

Subsets are integer bitmasks: bit ``i`` set means piece ``i`` is in the set.
A system is stored as the partition of all ``2**n - 2`` proper subsets into
classes. Every class is a sorted tuple of masks and classes are sorted by
their least member, so two equal systems compare (and serialize) equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from acs import CapacityError, GenerationError

MIN_PIECES = 2
MAX_PIECES = 16

Pair = tuple[int, int]


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) ^ mask


def proper_subsets(n: int) -> range:
    return range(1, full_mask(n))


def is_proper(mask: int, n: int) -> bool:
    return 0 < mask < full_mask(n)


def mask_of(pieces: Iterable[int]) -> int:
    m = 0
    for i in pieces:
        m |= 1 << i
    return m


def pieces_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_mask(mask: int) -> str:
    return "{" + ",".join(map(str, pieces_of(mask))) + "}"


def check_piece_count(n: int) -> None:
    if not MIN_PIECES <= n <= MAX_PIECES:
        raise CapacityError(f"piece count {n} outside [{MIN_PIECES}, {MAX_PIECES}]")


def check_pairs(n: int, pairs: Iterable[Pair]) -> list[Pair]:
    out = []
    for s, t in pairs:
        if not (is_proper(s, n) and is_proper(t, n)):
            raise ValueError(f"pair ({s}, {t}) is not a pair of proper subsets of {n} pieces")
        out.append((s, t))
    return out


class _UnionFind:
    """Flat union-find over ``0..size-1``; roots are the least element."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


@dataclass(frozen=True)
class CongruenceSystem:
    n: int
    classes: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        check_piece_count(self.n)
        index = {}
        for ci, cls in enumerate(self.classes):
            for m in cls:
                if not is_proper(m, self.n):
                    raise ValueError(f"mask {m} is not a proper subset of {self.n} pieces")
                if m in index:
                    raise ValueError(f"mask {m} occurs in two classes")
                index[m] = ci
        if len(index) != full_mask(self.n) - 1:
            raise ValueError("classes do not cover every proper subset")
        object.__setattr__(self, "_index", index)
        for cls in self.classes:
            comp_class = self._index[complement(cls[0], self.n)]
            for m in cls[1:]:
                if self._index[complement(m, self.n)] != comp_class:
                    raise ValueError("partition is not closed under complements")

    @classmethod
    def from_partition(cls, n: int, groups: Iterable[Iterable[int]]) -> "CongruenceSystem":
        classes = sorted(tuple(sorted(g)) for g in groups)
        return cls(n, tuple(classes))

    @classmethod
    def identity(cls, n: int) -> "CongruenceSystem":
        check_piece_count(n)
        return cls(n, tuple((m,) for m in proper_subsets(n)))

    def class_index(self, mask: int) -> int:
        return self._index[mask]

    def class_of(self, mask: int) -> tuple[int, ...]:
        return self.classes[self._index[mask]]

    def representative(self, mask: int) -> int:
        return self.class_of(mask)[0]

    def related(self, u: int, v: int) -> bool:
        return self._index[u] == self._index[v]

    def pairs(self) -> list[Pair]:
        """A spanning list of pairs: each class member tied to its representative."""
        return [(cls[0], m) for cls in self.classes for m in cls[1:]]


def closure(n: int, pairs: Iterable[Pair]) -> CongruenceSystem:
    """Smallest congruence system on ``n`` pieces containing ``pairs``."""
    check_piece_count(n)
    pairs = check_pairs(n, pairs)
    full = full_mask(n)
    uf = _UnionFind(full)
    for s, t in pairs:
        uf.union(s, t)
        uf.union(full ^ s, full ^ t)
    groups: dict[int, list[int]] = {}
    for m in proper_subsets(n):
        groups.setdefault(uf.find(m), []).append(m)
    # roots are least members and masks are visited in order, so classes are sorted
    return CongruenceSystem(n, tuple(tuple(g) for g in groups.values()))


def is_non_complementing(system: CongruenceSystem) -> bool:
    n = system.n
    return not any(system.related(m, complement(m, n)) for m in proper_subsets(n))


@dataclass(frozen=True)
class ExpansionWitness:
    """Chain ``V_0 E W_0 <= V_1 E W_1 <= ... V_k E W_k < V_0`` (last inclusion strict)."""

    V: tuple[int, ...]
    W: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.V) - 1


def check_expansion_witness(system: CongruenceSystem, witness: ExpansionWitness) -> Optional[str]:
    """Return ``None`` if the chain is valid, else a description of the first defect."""
    V, W, n = witness.V, witness.W, system.n
    if not V or len(V) != len(W):
        return "V and W must be nonempty and of equal length"
    for i, (v, w) in enumerate(zip(V, W)):
        if not (is_proper(v, n) and is_proper(w, n)):
            return f"V_{i} or W_{i} is not a proper subset"
        if not system.related(v, w):
            return f"V_{i} and W_{i} are not related"
    for i in range(len(V) - 1):
        if W[i] & ~V[i + 1]:
            return f"W_{i} is not contained in V_{i + 1}"
    if W[-1] & ~V[0] or W[-1] == V[0]:
        return "W_k is not a proper subset of V_0"
    return None


def _class_steps(system: CongruenceSystem) -> list[dict[int, tuple[int, int]]]:
    """For each class C: {class C' : (W, V)} with W in C, V >= W and V in C'.

    (W, V) is the least such pair found while scanning C in mask order.
    """
    steps = []
    for cls in system.classes:
        reach: dict[int, tuple[int, int]] = {}
        for w in cls:
            n = system.n
            full = full_mask(n)
            free = full ^ w
            # ascending enumeration of subsets of free bits keeps V minimal per target
            subs = []
            s = free
            while True:
                subs.append(s)
                if s == 0:
                    break
                s = (s - 1) & free
            for s in reversed(subs):
                v = w | s
                if v == full:
                    continue
                c = system.class_index(v)
                if c not in reach:
                    reach[c] = (w, v)
        steps.append(reach)
    return steps


def is_non_expanding(system: CongruenceSystem) -> tuple[bool, Optional[ExpansionWitness]]:
    """Decide non-expansion; on failure return a witness chain of minimal length.

    Among witnesses of minimal ``k`` the one with least ``V_0`` (then least
    ``W_k``) is returned.
    """
    steps = _class_steps(system)
    ncls = len(system.classes)
    best = None
    for start in range(ncls):
        # BFS over classes; parent[c] = (previous class, W in previous, V in c)
        parent: dict[int, Optional[tuple[int, int, int]]] = {start: None}
        depth = {start: 0}
        order = [start]
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for c2 in sorted(steps[c]):
                if c2 not in parent:
                    w, v = steps[c][c2]
                    parent[c2] = (c, w, v)
                    depth[c2] = depth[c] + 1
                    order.append(c2)
                    queue.append(c2)
        for v0 in system.classes[start]:
            for c in order:
                if best is not None and depth[c] > best[0]:
                    break
                hits = [w for w in system.classes[c] if w != v0 and not (w & ~v0)]
                if hits:
                    key = (depth[c], v0, hits[0])
                    if best is None or key < best[0:3]:
                        best = (depth[c], v0, hits[0], start, c, parent)
                    break
    if best is None:
        return True, None
    _, v0, wk, start, c, parent = best
    Vs, Ws = [], [wk]
    while parent[c] is not None:
        prev, w, v = parent[c]
        Vs.append(v)
        Ws.append(w)
        c = prev
    Vs.append(v0)
    return False, ExpansionWitness(tuple(reversed(Vs)), tuple(reversed(Ws)))


def complementary_pairs(system: CongruenceSystem) -> list[Pair]:
    n = system.n
    out = []
    for m in proper_subsets(n):
        c = complement(m, n)
        if m < c and system.related(m, c):
            out.append((m, c))
    return out


def _same_pair(p: Pair, q: Pair) -> bool:
    return p == q or p == (q[1], q[0])


def minimize_good_generating(system: CongruenceSystem, seed: Sequence[Pair]) -> list[Pair]:
    """Drop redundant seed pairs, keeping every complementary pair of ``system``.

    Removal is tried in seed order; a pair is dropped when the remaining set
    still generates ``system``.
    """
    n = system.n
    comp = complementary_pairs(system)
    rest: list[Pair] = []
    for p in check_pairs(n, seed):
        if any(_same_pair(p, q) for q in comp) or any(_same_pair(p, q) for q in rest):
            continue
        rest.append(p)
    if closure(n, comp + rest) != system:
        raise GenerationError("seed together with the complementary pairs does not generate the system")
    i = 0
    while i < len(rest):
        trial = rest[:i] + rest[i + 1:]
        if closure(n, comp + trial) == system:
            rest = trial
        else:
            i += 1
    return comp + rest


def preset(name: str, n: Optional[int] = None) -> tuple[CongruenceSystem, list[Pair]]:
    """Named systems: ``divisibility`` (any n) and ``paradoxical`` (n = 4)."""
    if name == "divisibility":
        if n is None:
            raise ValueError("divisibility needs a piece count")
        check_piece_count(n)
        gens = [(1 << i, 1 << (i + 1)) for i in range(n - 1)]
    elif name == "paradoxical":
        if n not in (None, 4):
            raise ValueError("the paradoxical system is defined on 4 pieces only")
        n = 4
        gens = [(mask_of([0]), mask_of([0, 1, 2])), (mask_of([1]), mask_of([0, 1, 3]))]
    else:
        raise ValueError(f"unknown preset {name!r}")
    return closure(n, gens), gens


# -- serialization -----------------------------------------------------------

def system_to_json(system: CongruenceSystem) -> dict:
    return {"n": system.n, "classes": [list(c) for c in system.classes]}


def system_from_json(data: dict) -> CongruenceSystem:
    return CongruenceSystem.from_partition(int(data["n"]), data["classes"])


def genset_to_json(pairs: Sequence[Pair]) -> list:
    return [[s, t] for s, t in pairs]


def genset_from_json(data: list) -> list[Pair]:
    return [(int(s), int(t)) for s, t in data]
