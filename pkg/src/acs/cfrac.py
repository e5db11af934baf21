"""Exact quadratic surds, continued fractions and Moebius actions of PGL2(Z).

Everything is integer arithmetic; Python integers do not overflow, so no
precision is ever lost.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from acs import ACSError


class SurdError(ACSError):
    pass


# -- quadratic surds -----------------------------------------------------------

_TRIAL_LIMIT = 10 ** 5


def _squarefree(D: int, hint: int = 0) -> tuple[int, int]:
    """``D = s*s*core`` with ``core`` squarefree.

    ``hint`` is a radicand D is expected to be a square multiple of. Without
    one, trial division stops at 10**5; a cofactor left over is folded only
    if it is a perfect square, which is exact below 10**15.
    """
    if hint and D % hint == 0:
        s = math.isqrt(D // hint)
        if s * s * hint == D:
            return s, hint
    s, core, f = 1, D, 2
    while f * f <= core and f <= _TRIAL_LIMIT:
        while core % (f * f) == 0:
            core //= f * f
            s *= f
        f += 1 if f == 2 else 2
    if f > _TRIAL_LIMIT:
        t = math.isqrt(core)
        if t * t == core:
            s, core = s * t, 1
    return s, core


def _sign(a: int, b: int, D: int) -> int:
    """Sign of ``a + b*sqrt(D)``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or D == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare squares
    diff = a * a - b * b * D
    return sa if diff > 0 else (sb if diff < 0 else 0)


@dataclass(frozen=True)
class Surd:
    """``(p + q*sqrt(D)) / r``, or the point at infinity."""

    p: int = 0
    q: int = 0
    D: int = 0
    r: int = 1
    inf: bool = False

    @classmethod
    def make(cls, p: int, q: int = 0, D: int = 0, r: int = 1, hint: int = 0) -> "Surd":
        if r == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if D < 0:
            raise SurdError("negative radicand")
        if q and D:
            s, D = _squarefree(D, hint)
            q *= s
            if D == 1:
                p, q, D = p + q, 0, 0
        if q == 0 or D == 0:
            q, D = 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        return cls(p // g, q // g, D, r // g)

    @classmethod
    def rational(cls, num: int, den: int = 1) -> "Surd":
        return cls.make(num, 0, 0, den)

    @classmethod
    def sqrt(cls, D: int) -> "Surd":
        return cls.make(0, 1, D, 1)

    @property
    def is_rational(self) -> bool:
        return not self.inf and self.q == 0

    def _radicand(self, other: "Surd") -> int:
        if self.D and other.D and self.D != other.D:
            raise SurdError(f"mixed radicands {self.D} and {other.D}")
        return self.D or other.D

    def __add__(self, other):
        other = _coerce(other)
        if self.inf or other.inf:
            raise SurdError("arithmetic with infinity")
        D = self._radicand(other)
        return Surd.make(self.p * other.r + other.p * self.r, self.q * other.r + other.q * self.r, D,
                         self.r * other.r)

    __radd__ = __add__

    def __neg__(self):
        if self.inf:
            return self
        return Surd(-self.p, -self.q, self.D, self.r)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.inf or other.inf:
            raise SurdError("arithmetic with infinity")
        D = self._radicand(other)
        return Surd.make(self.p * other.p + self.q * other.q * D, self.p * other.q + self.q * other.p, D,
                         self.r * other.r)

    __rmul__ = __mul__

    def reciprocal(self) -> "Surd":
        if self.inf:
            return Surd.rational(0)
        norm = self.p * self.p - self.q * self.q * self.D
        if norm == 0:
            return INF
        # r / (p + q sqrt D) = r (p - q sqrt D) / norm
        return Surd.make(self.r * self.p, -self.r * self.q, self.D, norm)

    def __truediv__(self, other):
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def sign(self) -> int:
        if self.inf:
            raise SurdError("infinity has no sign")
        return _sign(self.p, self.q, self.D)

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def floor(self) -> int:
        if self.inf:
            raise SurdError("infinity has no floor")
        s = math.isqrt(self.q * self.q * self.D)
        if self.q >= 0:
            t = s
        else:
            t = -s if s * s == self.q * self.q * self.D else -s - 1
        return (self.p + t) // self.r

    def __float__(self):
        if self.inf:
            return math.inf
        return (self.p + self.q * math.sqrt(self.D)) / self.r

    def __str__(self):
        if self.inf:
            return "inf"
        if self.q == 0:
            return str(self.p) if self.r == 1 else f"{self.p}/{self.r}"
        return f"({self.p}{'+' if self.q >= 0 else '-'}{abs(self.q)}*sqrt({self.D}))/{self.r}"


INF = Surd(0, 0, 0, 1, True)


def _coerce(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, int):
        return Surd.rational(x)
    raise TypeError(f"cannot use {x!r} as a surd")


_SURD_RE = re.compile(r"^\(?\s*(-?\d+)?\s*(?:([+-])\s*(\d*)\s*\*?\s*sqrt\((\d+)\))?\s*\)?\s*(?:/\s*(-?\d+))?$")


def parse_surd(text: str) -> Surd:
    """Read ``(p+q*sqrt(D))/r``; the parts are optional, so ``sqrt(2)``,
    ``7/3`` and ``inf`` also parse."""
    text = text.strip().replace(" ", "")
    if text in ("inf", "oo"):
        return INF
    if text.startswith("sqrt(") or text.startswith("(sqrt("):
        text = text.replace("sqrt(", "+sqrt(", 1)
    m = _SURD_RE.match(text)
    if not m or (m.group(1) is None and m.group(4) is None):
        raise ValueError(f"cannot parse surd {text!r}")
    p = int(m.group(1) or 0)
    q = 0
    D = 0
    if m.group(4):
        q = int(m.group(3) or 1) * (-1 if m.group(2) == "-" else 1)
        D = int(m.group(4))
    r = int(m.group(5) or 1)
    return Surd.make(p, q, D, r)


# -- continued fractions -----------------------------------------------------------

@dataclass(frozen=True)
class CFExpansion:
    """``a0; preperiod; (period)``. An empty period means a finite expansion."""

    a0: int
    preperiod: tuple = ()
    period: tuple = ()

    @property
    def finite(self) -> bool:
        return not self.period

    def digits(self, count: int) -> list[int]:
        """The first ``count`` digits after a0."""
        out = list(self.preperiod[:count])
        while len(out) < count and self.period:
            out.extend(self.period)
        return out[:count]

    def value(self, radicand: int = 0) -> Surd:
        """The surd this expansion represents; ``radicand`` speeds up
        normalization when the squarefree part is known."""
        tail: Optional[Surd] = None
        if self.period:
            # y = [period; y]: y = (m00 y + m01) / (m10 y + m11), take the root > 1
            m00, m01, m10, m11 = 1, 0, 0, 1
            for a in self.period:
                m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
            A, B, C = m10, m11 - m00, -m01
            tail = Surd.make(-B, 1, B * B - 4 * A * C, 2 * A, radicand)
        x = tail
        for a in reversed(self.preperiod):
            x = Surd.rational(a) if x is None else a + x.reciprocal()
        return Surd.rational(self.a0) if x is None else self.a0 + x.reciprocal()

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"{self.a0};[{pre}];({per})"


def parse_expansion(text: str) -> CFExpansion:
    m = re.fullmatch(r"\s*(-?\d+)\s*;\s*\[([\d,\s]*)\]\s*;\s*\(([\d,\s]*)\)\s*", text)
    if not m:
        raise ValueError(f"cannot parse expansion {text!r}")

    def nums(s):
        return tuple(int(t) for t in s.split(",") if t.strip())

    return canonical_expansion(int(m.group(1)), nums(m.group(2)), nums(m.group(3)))


def _primitive(period: Sequence[int]) -> tuple:
    L = len(period)
    for k in range(1, L + 1):
        if L % k == 0 and tuple(period[:k]) * (L // k) == tuple(period):
            return tuple(period[:k])
    return tuple(period)


def canonical_expansion(a0: int, pre: Sequence[int], period: Sequence[int]) -> CFExpansion:
    """Shortest preperiod with a primitive period; zero digits are elided."""
    pre = list(pre)
    if 0 in pre:
        # one unrolled copy of the period lets a zero merge into it
        a0, pre = _elide(a0, pre + list(period))
    per = list(_primitive(period))
    while pre and per and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return CFExpansion(a0, tuple(pre), tuple(per))


def _elide(a0: int, digits: list[int]) -> tuple[int, list[int]]:
    """Remove zero digits using 1/(0 + 1/(a + C)) = a + C."""
    i = 0
    while i < len(digits):
        if digits[i] != 0:
            i += 1
            continue
        if i + 1 >= len(digits):
            raise SurdError("trailing zero digit")
        if i == 0:
            a0 += digits[1]
            del digits[0:2]
        else:
            digits[i - 1] += digits[i + 1]
            del digits[i:i + 2]
            i -= 1
    return a0, digits


def cf_expand(x: Surd) -> CFExpansion:
    if x.inf:
        raise SurdError("infinity has no expansion")
    if x.q == 0:
        num, den = x.p, x.r
        a0 = num // den
        num, den = den, num - a0 * den
        digits = []
        while num:
            if den == 0:
                break
            a = num // den
            digits.append(a)
            num, den = den, num - a * den
        return CFExpansion(a0, tuple(digits), ())
    # write x = (P + sqrt(N)) / Q with Q | N - P^2
    N = x.q * x.q * x.D
    P, Q = (x.p, x.r) if x.q > 0 else (-x.p, -x.r)
    if (N - P * P) % Q:
        P, N, Q = P * abs(Q), N * Q * Q, Q * abs(Q)
    s = math.isqrt(N)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        a = _floor_state(P, Q, N, s)
        digits.append(a)
        P = a * Q - P
        Q = (N - P * P) // Q
    i = seen[(P, Q)]
    a0 = digits[0]
    if i == 0:
        return canonical_expansion(a0, (), digits[1:] + [a0])
    return canonical_expansion(a0, digits[1:i], digits[i:])


def _floor_state(P: int, Q: int, N: int, s: int) -> int:
    """floor((P + sqrt(N)) / Q) for non-square N."""
    if Q > 0:
        return (P + s) // Q
    # (P + sqrt N)/Q = (-P - sqrt N)/(-Q); floor(-sqrt N) = -s - 1
    return (-P - s - 1) // (-Q)


def cf_reciprocal(e: CFExpansion) -> CFExpansion:
    """Expansion of 1/x computed on digits alone."""
    if e.finite:
        raise SurdError("reciprocal is defined here for irrationals only")
    need = 6
    reps = max(1, -(-(need - len(e.preperiod)) // len(e.period)))
    d = list(e.preperiod) + list(e.period) * reps
    a = e.a0
    if a >= 1:
        a0, digits = 0, [a] + d
    elif a == 0:
        a0, digits = d[0], d[1:]
    elif a == -1:
        # x = -1 + 1/(b + C)
        b = d[0]
        if b >= 2:
            a0, digits = -2, [1, b - 2] + d[1:]
        else:
            a0, digits = -d[1] - 2, [1, d[2] - 1] + d[3:]
    else:
        # 1/(a + 1/(b + C)) = -1 + 1/(1 + 1/((-a-2) + 1/(1 + 1/((b-1) + C))))
        b = d[0]
        a0, digits = -1, [1, -a - 2, 1, b - 1] + d[1:]
    a0, digits = _elide(a0, digits)
    # the tail after the unrolled copies is periodic with the same period
    return canonical_expansion(a0, digits, e.period)


def _min_rotation(seq: Sequence[int]) -> tuple:
    return min(tuple(seq[i:]) + tuple(seq[:i]) for i in range(len(seq)))


def tail_equivalent(e1: CFExpansion, e2: CFExpansion) -> bool:
    """Eventually periodic expansions share a tail iff their periods agree up
    to rotation. All rationals form a single orbit, so finite ones always agree."""
    if e1.finite != e2.finite:
        raise SurdError("cannot compare a rational with an irrational")
    if e1.finite:
        return True
    return _min_rotation(_primitive(e1.period)) == _min_rotation(_primitive(e2.period))


def f_step(x: Surd) -> Surd:
    """x - 1 above 1, 1/x on (0, 1), x + 1 below 0."""
    if x.inf or x.is_rational:
        raise SurdError("f is defined on irrationals only")
    if x > 1:
        return x - 1
    if x.sign() > 0:
        return x.reciprocal()
    return x + 1


def end_selection_ray(x: Surd, steps: int) -> list[Surd]:
    ray = [x]
    for _ in range(steps):
        ray.append(f_step(ray[-1]))
    return ray


# -- Moebius transformations ----------------------------------------------------

@dataclass(frozen=True)
class Moebius:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int) -> "Moebius":
        det = a * d - b * c
        if det == 0:
            raise SurdError("degenerate matrix")
        if det not in (1, -1):
            raise SurdError(f"determinant {det} is not a unit")
        # normalize modulo -I
        if c < 0 or (c == 0 and d < 0):
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return Moebius.make(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "Moebius":
        det = self.det
        return Moebius.make(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __call__(self, x: Surd) -> Surd:
        return moebius_apply(self, x)


ALPHA = Moebius.make(1, 1, 0, 1)
BETA = Moebius.make(0, -1, 1, 0)
GAMMA = Moebius.make(0, 1, 1, 0)
IDENTITY = Moebius.make(1, 0, 0, 1)


def moebius_apply(M: Moebius, x: Surd) -> Surd:
    if x.inf:
        return INF if M.c == 0 else Surd.rational(M.a, M.c)
    den = M.c * x + M.d
    if den.sign() == 0:
        return INF
    return (M.a * x + M.b) / den


def fixed_points(M: Moebius) -> list[Surd]:
    """Real projective fixed points: roots of c x^2 + (d - a) x - b = 0, with
    infinity when c = 0."""
    if M.is_identity():
        raise SurdError("the identity fixes everything")
    a, b, c, d = M.a, M.b, M.c, M.d
    if c == 0:
        out = [INF]
        if d != a:
            out.append(Surd.rational(b, d - a))
        return out
    disc = (d - a) ** 2 + 4 * b * c
    if disc < 0:
        return []
    if disc == 0:
        return [Surd.rational(a - d, 2 * c)]
    roots = [Surd.make(a - d, -1, disc, 2 * c), Surd.make(a - d, 1, disc, 2 * c)]
    return sorted(roots, key=float)


def word_matrix(letters: Sequence[tuple[Moebius, int]]) -> Moebius:
    """Product of ``M**sign`` over letters, leftmost applied last."""
    out = IDENTITY
    for M, sign in letters:
        out = out @ (M if sign > 0 else M.inverse())
    return out
