"""Free-product presentations, word labelings and the bad-word search.

A presentation attaches one generator to each relation pair ``(S_i, T_i)``.
Generator ``i`` is an involution exactly when ``T_i`` is the complement of
``S_i``; involutions only ever appear with sign ``+1``.

Words are tuples of letters stored innermost-first: ``(g_0, g_1, ..., g_l)``
stands for the group element ``g_l ... g_1 g_0``, so ``g_0`` acts first.
The text format writes the same order, e.g. ``"g0 g1' g0"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from acs import ACSError
from acs.core import Pair, check_pairs, check_piece_count, complement, full_mask


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def sort_key(self) -> tuple[int, int]:
        return (self.gen, 0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        return f"g{self.gen}" + ("" if self.sign > 0 else "'")


Word = tuple[Letter, ...]


class NoBoundError(ACSError):
    """Bad words exist at every length up to the cap."""

    def __init__(self, cap: int, word: Word, k: int, m: int):
        super().__init__(f"bad words persist up to length {cap}; e.g. {format_word(word)} is ({k},{m})-bad")
        self.cap = cap
        self.word = word
        self.k = k
        self.m = m


@dataclass(frozen=True)
class Presentation:
    n: int
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        check_piece_count(self.n)
        check_pairs(self.n, self.pairs)

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[Pair]) -> "Presentation":
        return cls(n, tuple((int(s), int(t)) for s, t in pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def involution(self) -> tuple[bool, ...]:
        return tuple(t == complement(s, self.n) for s, t in self.pairs)

    def letters(self) -> list[Letter]:
        """All letters in lex order (generator index, then ``+`` before ``-``)."""
        out = []
        for g, inv in enumerate(self.involution):
            out.append(Letter(g, 1))
            if not inv:
                out.append(Letter(g, -1))
        return out

    def inverse(self, letter: Letter) -> Letter:
        if self.involution[letter.gen]:
            return Letter(letter.gen, 1)
        return Letter(letter.gen, -letter.sign)

    def letter(self, gen: int, sign: int = 1) -> Letter:
        if not 0 <= gen < self.k:
            raise ValueError(f"generator {gen} out of range")
        if self.involution[gen]:
            sign = 1
        return Letter(gen, sign)


def is_reduced(word: Sequence[Letter], p: Presentation) -> bool:
    return all(b != p.inverse(a) for a, b in zip(word, word[1:]))


def transfer(letter: Letter, p: Presentation) -> tuple[int, int]:
    """``(X, Y)`` for a letter: membership in ``X`` before iff in ``Y`` after."""
    s, t = p.pairs[letter.gen]
    return (s, t) if letter.sign > 0 else (t, s)


def step(labels: int, letter: Letter, p: Presentation) -> int:
    x, y = transfer(letter, p)
    full = full_mask(p.n)
    out = 0
    if labels & x:
        out |= y
    if labels & ~x & full:
        out |= full ^ y
    return out


def back_step(labels: int, letter: Letter, p: Presentation) -> int:
    """Labels before ``letter`` that can be followed by some label in ``labels``."""
    x, y = transfer(letter, p)
    full = full_mask(p.n)
    out = 0
    if labels & y:
        out |= x
    if labels & ~y & full:
        out |= full ^ x
    return out


def propagate(word: Sequence[Letter], start: int, p: Presentation) -> int:
    """Feasible final labels over all labelings whose first label lies in ``start``."""
    labels = start
    for letter in word:
        labels = step(labels, letter, p)
    return labels


def is_bad(word: Sequence[Letter], p: Presentation) -> Optional[tuple[int, int]]:
    """Least ``(k, m)`` such that no labeling runs from ``m`` to ``k``, if any."""
    if not word:
        return None
    finals = [propagate(word, 1 << m, p) for m in range(p.n)]
    for k in range(p.n):
        for m in range(p.n):
            if not finals[m] >> k & 1:
                return (k, m)
    return None


def lex_least_labeling(word: Sequence[Letter], p: Presentation,
                       start: Optional[int] = None, end: Optional[int] = None) -> Optional[list[int]]:
    """Lex-least labeling ``n_0 .. n_{l+1}`` with optional fixed endpoints, or ``None``."""
    full = full_mask(p.n)
    back = [0] * (len(word) + 1)
    back[-1] = full if end is None else 1 << end
    for i in range(len(word) - 1, -1, -1):
        back[i] = back_step(back[i + 1], word[i], p)
    allowed = back[0] if start is None else back[0] & (1 << start)
    if not allowed:
        return None
    labels = [_lowest(allowed)]
    for i, letter in enumerate(word):
        nxt = step(1 << labels[-1], letter, p) & back[i + 1]
        labels.append(_lowest(nxt))
    return labels


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def check_labeling(word: Sequence[Letter], labels: Sequence[int], p: Presentation) -> bool:
    if len(labels) != len(word) + 1:
        return False
    for i, letter in enumerate(word):
        x, y = transfer(letter, p)
        if bool(x >> labels[i] & 1) != bool(y >> labels[i + 1] & 1):
            return False
    return True


def enumerate_reduced(p: Presentation, length: int) -> Iterator[Word]:
    """All reduced words of exactly ``length`` letters, in lex order."""
    letters = p.letters()

    def extend(prefix: list[Letter]) -> Iterator[Word]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        banned = p.inverse(prefix[-1]) if prefix else None
        for a in letters:
            if a != banned:
                prefix.append(a)
                yield from extend(prefix)
                prefix.pop()

    if length < 0:
        raise ValueError("length must be nonnegative")
    yield from extend([])


def count_reduced(p: Presentation, length: int) -> int:
    """Sphere sizes of the free product of the presentation's Z and Z/2Z factors."""
    if length == 0:
        return 1
    letters = p.letters()
    total = len(letters)
    # each letter may be followed by any letter except its own inverse
    return total * (total - 1) ** (length - 1)


def bad_words_by_length(p: Presentation, max_len: int) -> list[Optional[tuple[Word, int, int]]]:
    """For each length ``1..max_len``: the lex-least bad word with its (k, m), or None.

    Dynamic programming over states ``(last letter, images of each singleton)``;
    a word's badness depends only on its state. States are scanned in the order
    of their lex-least representative, so representatives stay lex-least.
    """
    n = p.n
    letters = p.letters()
    # state -> representative word; state = (last letter, tuple of images)
    layer: dict = {}
    for a in letters:
        images = tuple(step(1 << m, a, p) for m in range(n))
        key = (a, images)
        if key not in layer:
            layer[key] = (a,)
    out = []
    for length in range(1, max_len + 1):
        if length > 1:
            nxt: dict = {}
            for (last, images), rep in sorted(layer.items(), key=lambda kv: [l.sort_key() for l in kv[1]]):
                banned = p.inverse(last)
                for a in letters:
                    if a == banned:
                        continue
                    key = (a, tuple(step(im, a, p) for im in images))
                    if key not in nxt:
                        nxt[key] = rep + (a,)
            layer = nxt
        found = None
        for (last, images), rep in sorted(layer.items(), key=lambda kv: [l.sort_key() for l in kv[1]]):
            km = _bad_pair(images, n)
            if km is not None:
                found = (rep, km[0], km[1])
                break
        out.append(found)
    return out


def _bad_pair(images: Sequence[int], n: int) -> Optional[tuple[int, int]]:
    for k in range(n):
        for m in range(n):
            if not images[m] >> k & 1:
                return (k, m)
    return None


def bad_word_bound(p: Presentation, cap: int = 12) -> int:
    """Least ``r >= 1`` with no bad reduced word of length ``r`` (0 without generators).

    Bad words are closed under taking initial and final segments, so no bad
    word is longer than ``r - 1``. Raises :class:`NoBoundError` when every
    length up to ``cap`` carries a bad word.
    """
    if p.k == 0:
        return 0
    found = bad_words_by_length(p, cap)
    for length, item in enumerate(found, start=1):
        if item is None:
            return length
    word, k, m = found[-1]
    raise NoBoundError(cap, word, k, m)


# -- text format -------------------------------------------------------------

def format_word(word: Sequence[Letter]) -> str:
    return " ".join(str(a) for a in word)


def parse_word(text: str, p: Optional[Presentation] = None) -> Word:
    out = []
    for tok in text.split():
        sign = 1
        if tok.endswith("'"):
            sign = -1
            tok = tok[:-1]
        if not tok.startswith("g") or not tok[1:].isdigit():
            raise ValueError(f"bad letter token {tok!r}")
        gen = int(tok[1:])
        out.append(p.letter(gen, sign) if p is not None else Letter(gen, sign))
    return tuple(out)
