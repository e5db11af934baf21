"""Brute-force reference implementations used only by the test-suite.

None of these share code with the package paths they check.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


def naive_closure_partition(n, pairs):
    """Least complement-closed equivalence relation via boolean-matrix fixed point."""
    full = (1 << n) - 1
    subsets = list(range(1, full))
    idx = {m: i for i, m in enumerate(subsets)}
    size = len(subsets)
    R = np.eye(size, dtype=bool)
    for s, t in pairs:
        R[idx[s], idx[t]] = True
    comp = np.array([idx[full ^ m] for m in subsets])
    while True:
        new = R | R.T | R[np.ix_(comp, comp)]
        new = new | ((new.astype(np.int64) @ new.astype(np.int64)) > 0)
        if (new == R).all():
            break
        R = new
    groups = {}
    for i, m in enumerate(subsets):
        key = min(subsets[j] for j in np.nonzero(R[i])[0])
        groups.setdefault(key, []).append(m)
    return sorted(tuple(sorted(g)) for g in groups.values())


def naive_is_expanding(n, related):
    """Chain search by explicit fixed point over subsets, with ``related(u, v)``.

    Iterates the reachable set of ``W`` values from each ``V_0`` for up to
    ``2**n`` rounds (a chain longer than the number of subsets revisits a state).
    """
    full = (1 << n) - 1
    subsets = list(range(1, full))
    for v0 in subsets:
        reach = {w for w in subsets if related(v0, w)}
        for _ in range(1 << n):
            if any(w != v0 and (w & ~v0) == 0 for w in reach):
                return True
            nxt = set(reach)
            for w in reach:
                for v in subsets:
                    if (w & ~v) == 0:
                        nxt.update(w2 for w2 in subsets if related(v, w2))
            if nxt == reach:
                break
            reach = nxt
    return False


def labelings_final(word_xy, n, m):
    """All final labels over all labelings starting at ``m``; brute force over n**(l+1)."""
    out = set()
    for seq in itertools.product(range(n), repeat=len(word_xy)):
        labels = (m,) + seq
        ok = all((labels[i] in _pieces(x)) == (labels[i + 1] in _pieces(y))
                 for i, (x, y) in enumerate(word_xy))
        if ok:
            out.add(labels[-1])
    return out


def _pieces(mask):
    return {i for i in range(mask.bit_length()) if mask >> i & 1}


def bfs_dist(adj, u, v):
    if u == v:
        return 0
    seen = {u}
    q = deque([(u, 0)])
    while q:
        x, d = q.popleft()
        for y in adj[x]:
            if y == v:
                return d + 1
            if y not in seen:
                seen.add(y)
                q.append((y, d + 1))
    return float("inf")


def brute_force_cycle(n, arcs, vertices, pairs):
    """All valid assignments of a small action graph, every arc checked."""
    sols = []
    for assign in itertools.product(range(n), repeat=len(vertices)):
        a = dict(zip(vertices, assign))
        ok = True
        for x, y, gen in arcs:
            s, t = pairs[gen]
            if (s >> a[x] & 1) != (t >> a[y] & 1):
                ok = False
                break
        if ok:
            sols.append(a)
    return sols


def cf_digits_decimal(p, q, D, r, count, precision=200):
    """First continued-fraction digits of (p + q sqrt D)/r by high-precision decimals."""
    from decimal import Decimal, getcontext
    getcontext().prec = precision
    x = (Decimal(p) + Decimal(q) * Decimal(D).sqrt()) / Decimal(r)
    digits = []
    for _ in range(count + 1):
        a = int(x.to_integral_value(rounding="ROUND_FLOOR"))
        digits.append(a)
        x = 1 / (x - a)
    return digits
