"""Braid words over the Artin generators and an exact word-problem solver.

A braid on ``n`` strands is stored as a tuple of nonzero integers: ``k > 0``
stands for sigma_k and ``k < 0`` for sigma_|k|^{-1}.  Equality of braids is
decided with the left Garside normal form

    Delta^inf * A_1 * A_2 * ... * A_r

where every ``A_i`` is a permutation braid other than 1 and Delta, and each
adjacent pair is left-weighted: the starting set of ``A_{i+1}`` is contained
in the finishing set of ``A_i``.

Permutations are 0-indexed image tuples and compose as functions,
``(p * q)[x] = p[q[x]]``, so the map from braids to permutations satisfies
``permutation(w1 w2) = permutation(w1) * permutation(w2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class BraidError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise BraidError(f"not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, i: int, n: int) -> Permutation:
        """The adjacent transposition s_i = (i, i+1), 1-indexed like sigma_i."""
        return cls(_transposition(n, i - 1))

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise BraidError("degree mismatch")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_invert(self.images))

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.degree))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-indexed."""
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


@lru_cache(maxsize=None)
def _transposition(n: int, i: int) -> tuple[int, ...]:
    t = list(range(n))
    t[i], t[i + 1] = t[i + 1], t[i]
    return tuple(t)


@lru_cache(maxsize=None)
def _delta(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def _finishing_set(p: tuple[int, ...]) -> frozenset[int]:
    # right descents: p * s_i is shorter
    return frozenset(i for i in range(len(p) - 1) if p[i] > p[i + 1])


def _starting_set(p: tuple[int, ...]) -> frozenset[int]:
    # left descents: s_i * p is shorter
    return _finishing_set(_invert(p))


def _tau(p: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugation of a permutation braid by Delta (an involution on simples)."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - x] for x in range(n))


def _reduced_word(p: tuple[int, ...]) -> list[int]:
    """A positive Artin word (1-indexed letters) for the permutation braid of p."""
    word = []
    p = list(p)
    while True:
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                # p = (p * s_i) * s_i with p * s_i shorter
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return word


# ---------------------------------------------------------------------------
# Braid words


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        letters = tuple(int(k) for k in self.letters)
        for k in letters:
            if k == 0:
                raise BraidError("zero is not a braid letter")
            if abs(k) > self.strands - 1:
                raise BraidError(f"letter {k} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            return BraidWord(self.strands, inverse(self).letters * -k)
        return BraidWord(self.strands, self.letters * k)

    def __str__(self):
        return format_word(self)


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def sigma(i: int, n: int, power: int = 1) -> BraidWord:
    """sigma_i^power as a word."""
    return BraidWord(n, (i if power > 0 else -i,) * abs(power))


def word(n: int, *letters: int) -> BraidWord:
    return BraidWord(n, letters)


_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*;")


def parse_word(text: str, n: int | None = None) -> BraidWord:
    """Parse ``[n=<int>;] k1 k2 ...`` with whitespace or commas as separators.

    An explicit ``n`` argument must agree with a header if both are given.
    """
    m = _HEADER.match(text)
    if m:
        header_n = int(m.group(1))
        if n is not None and n != header_n:
            raise BraidError(f"header says n={header_n} but n={n} was requested")
        n = header_n
        text = text[m.end():]
    if n is None:
        raise BraidError("strand count missing")
    letters = []
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        try:
            letters.append(int(tok))
        except ValueError:
            raise BraidError(f"malformed token {tok!r}") from None
    return BraidWord(n, tuple(letters))


def format_word(w: BraidWord, header: bool = False) -> str:
    body = " ".join(str(k) for k in w.letters)
    return f"n={w.strands}; {body}".rstrip() if header else body


def _check_same(*words: BraidWord) -> int:
    ns = {w.strands for w in words}
    if len(ns) != 1:
        raise BraidError(f"strand-count mismatch: {sorted(ns)}")
    return ns.pop()


def compose(*words: BraidWord) -> BraidWord:
    n = _check_same(*words)
    return BraidWord(n, tuple(k for w in words for k in w.letters))


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-k for k in reversed(w.letters)))


def conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """g w g^-1."""
    return compose(g, w, inverse(g))


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    """a b a^-1 b^-1."""
    return compose(a, b, inverse(a), inverse(b))


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[int] = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return BraidWord(w.strands, tuple(stack))


def pure_generator(i: int, j: int, n: int) -> BraidWord:
    """a_{i,j} = sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1}^-1 ... sigma_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise BraidError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    up = tuple(range(j - 1, i, -1))
    return BraidWord(n, up + (i, i) + tuple(-k for k in reversed(up)))


def permutation(w: BraidWord) -> Permutation:
    p = tuple(range(w.strands))
    for k in w.letters:
        p = _compose(p, _transposition(w.strands, abs(k) - 1))
    return Permutation(p)


# ---------------------------------------------------------------------------
# Garside normal form


@dataclass(frozen=True)
class GarsideNormalForm:
    strands: int
    infimum: int
    factors: tuple[Permutation, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return self.infimum == 0 and not self.factors

    def to_word(self) -> BraidWord:
        """A word representing the same braid (positive except for Delta^inf)."""
        n = self.strands
        delta = _reduced_word(_delta(n))
        if self.infimum >= 0:
            letters = delta * self.infimum
        else:
            letters = [-k for k in reversed(delta)] * (-self.infimum)
        for f in self.factors:
            letters = letters + _reduced_word(f.images)
        return BraidWord(n, tuple(letters))


def _left_weight(a: tuple[int, ...], b: tuple[int, ...]):
    """Normalize the pair of simples (a, b) so that it is left-weighted."""
    changed = False
    while True:
        extra = _starting_set(b) - _finishing_set(a)
        if not extra:
            return a, b, changed
        i = min(extra)
        s = _transposition(len(a), i)
        a, b = _compose(a, s), _compose(s, b)
        changed = True


def _append_simple(factors: list[tuple[int, ...]], x: tuple[int, ...]) -> None:
    factors.append(x)
    # one right-to-left sweep is enough after appending a single simple; loop
    # anyway until stable since a Delta or identity may be produced mid-way
    dirty = True
    while dirty:
        dirty = False
        for j in range(len(factors) - 1, 0, -1):
            a, b, changed = _left_weight(factors[j - 1], factors[j])
            if changed:
                factors[j - 1], factors[j] = a, b
                dirty = True


def normal_form(w: BraidWord) -> GarsideNormalForm:
    return _normal_form(w.strands, w.letters)


@lru_cache(maxsize=4096)
def _normal_form(n: int, letters: tuple[int, ...]) -> GarsideNormalForm:
    delta = _delta(n)
    ident = tuple(range(n))
    inf = 0
    factors: list[tuple[int, ...]] = []
    for k in letters:
        s = _transposition(n, abs(k) - 1)
        if k > 0:
            x = s
        else:
            # sigma^-1 = (s^-1 Delta) Delta^-1, then move Delta^-1 to the front
            x = _tau(_compose(s, delta))
            factors = [_tau(f) for f in factors]
            inf -= 1
        _append_simple(factors, x)
        lead = 0
        while lead < len(factors) and factors[lead] == delta:
            lead += 1
        inf += lead
        factors = [f for f in factors[lead:] if f != ident]
    return GarsideNormalForm(n, inf, tuple(Permutation(f) for f in factors))


def is_trivial(w: BraidWord) -> bool:
    return normal_form(w).is_trivial()


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    _check_same(w1, w2)
    return normal_form(w1) == normal_form(w2)


# ---------------------------------------------------------------------------
# Relator libraries


def braid_relators(n: int) -> list[BraidWord]:
    """sigma_i sigma_{i+1} sigma_i (sigma_{i+1} sigma_i sigma_{i+1})^-1 and the
    far commutators [sigma_i, sigma_j], |i - j| > 1."""
    out = []
    for i in range(1, n - 1):
        out.append(BraidWord(n, (i, i + 1, i, -(i + 1), -i, -(i + 1))))
    for i in range(1, n):
        for j in range(i + 2, n):
            out.append(BraidWord(n, (i, j, -i, -j)))
    return out


def _pure_conjugation_relations(n: int, a=None) -> Iterable[tuple[str, tuple[int, int, int, int], BraidWord, BraidWord]]:
    if a is None:
        a = lambda i, j: pure_generator(i, j, n)  # noqa: E731
    inv = inverse
    for r in range(1, n + 1):
        for s in range(r + 1, n + 1):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    lhs = compose(inv(a(r, s)), a(i, j), a(r, s))
                    if s < i or (i < r and s < j):
                        yield "P1", (r, s, i, j), lhs, a(i, j)
                    elif s == i:
                        yield "P2", (r, s, i, j), lhs, conjugate(a(i, j), a(r, j))
                    elif r == i and s < j:
                        yield "P3", (r, s, i, j), lhs, conjugate(a(i, j), compose(a(i, j), a(s, j)))
                    elif r < i < s < j:
                        c = commutator(a(r, j), a(s, j))
                        yield "P4", (r, s, i, j), lhs, conjugate(a(i, j), c)


def pure_braid_relations(n: int, a=None) -> list[tuple[str, tuple[int, int, int, int], BraidWord, BraidWord]]:
    """(label, (r, s, i, j), lhs, rhs) for every admissible index tuple of P1-P4.

    ``a(i, j)`` overrides the word used for a_{i,j}.
    """
    return list(_pure_conjugation_relations(n, a))


def pure_braid_relators(n: int) -> list[BraidWord]:
    return [compose(lhs, inverse(rhs)) for _, _, lhs, rhs in _pure_conjugation_relations(n)]


def random_word(n: int, length: int, rng) -> BraidWord:
    """A uniformly random word of the given length; ``rng`` is a random.Random."""
    letters = [k for k in range(-(n - 1), n) if k]
    return BraidWord(n, tuple(rng.choice(letters) for _ in range(length)))
