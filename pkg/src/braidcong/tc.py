"""Todd-Coxeter coset enumeration (HLT with lookahead) and the presentations G_n, H_n, S_n.

Words over a presentation are tuples of signed 1-based generator indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .braid import braid_relators, compose, inverse, pure_braid_relations
from .rep import _pw, sypre_relations, wajnryb_relators

Word = tuple[int, ...]

DEFAULT_MAX_COSETS = 500_000


def _free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _inv(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


@dataclass(frozen=True)
class Presentation:
    gens: int
    relators: tuple[Word, ...]
    subgroup: tuple[Word, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.gens:
                    raise ValueError(f"letter {x} out of range for {self.gens} generators")
            r = _free_reduce(r)
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))
        object.__setattr__(self, "subgroup", tuple(_free_reduce(w) for w in self.subgroup))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(1, self.gens + 1)))

    def to_text(self) -> str:
        lines = [f"gens: {self.gens}"]
        lines += [" ".join(map(str, r)) for r in self.relators]
        lines += ["sub: " + " ".join(map(str, w)) for w in self.subgroup]
        return "\n".join(lines) + "\n"

    def format_relator(self, r: Word) -> str:
        return " ".join(self.names[abs(x) - 1] + ("^-1" if x < 0 else "") for x in r)


def parse_presentation(text: str) -> Presentation:
    """``gens: k`` then one relator per line; ``sub: ...`` lines give subgroup generators."""
    gens = None
    rels, sub = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"gens\s*:\s*(\d+)", line)
        if m:
            gens = int(m.group(1))
            continue
        target = rels
        if line.startswith("sub:"):
            target, line = sub, line[4:]
        try:
            target.append(tuple(int(t) for t in re.split(r"[\s,]+", line.strip()) if t))
        except ValueError:
            raise ValueError(f"malformed relator line {raw!r}") from None
    if gens is None:
        raise ValueError("missing 'gens: k' header")
    return Presentation(gens, tuple(rels), tuple(sub))


# ---------------------------------------------------------------------------
# Presentations


def presentation_S(n: int) -> Presentation:
    rels = [(i, i) for i in range(1, n)]
    rels += [(i, i + 1) * 3 for i in range(1, n - 1)]
    rels += [(i, j) * 2 for i in range(1, n) for j in range(i + 2, n)]
    return Presentation(n - 1, tuple(rels), names=tuple(f"s{i}" for i in range(1, n)))


def presentation_G(n: int, p: int, force: bool = False) -> Presentation:
    """Braid relations plus R3; R4/R5 only for p > 3 (unless forced), R6 only for n > 4."""
    rels = [w.letters for w in braid_relators(n)]
    rels += [w.letters for w in wajnryb_relators(n, p, force)]
    return Presentation(n - 1, tuple(rels), names=tuple(f"x{i}" for i in range(1, n)))


def pair_index(n: int) -> dict[tuple[int, int], int]:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return {pq: t + 1 for t, pq in enumerate(pairs)}


def h_relations(n: int, p: int, force: bool = False, literal_B: bool = False) -> list[tuple[str, Word]]:
    """PR1-PR10 over the abstract generators a_{i,j}, numbered by ``pair_index``."""
    a = _pw(n, abstract=True)
    sy = [(label, w.letters) for label, w in sypre_relations(n, p, force, abstract=True, literal_B=literal_B)]
    late = ("PR8", "PR9", "PR10")
    out = [r for r in sy if not r[0].startswith(late)]
    pr = {"P1": "PR4", "P2": "PR5", "P3": "PR6", "P4": "PR7"}
    for label, idx, lhs, rhs in pure_braid_relations(n, a=lambda i, j: a(i, j)):
        out.append((f"{pr[label]}[{','.join(map(str, idx))}]", compose(lhs, inverse(rhs)).letters))
    return out + [r for r in sy if r[0].startswith(late)]


def presentation_H(n: int, p: int, force: bool = False) -> Presentation:
    names = tuple(f"a{i}{j}" for (i, j) in pair_index(n))
    return Presentation(len(names), tuple(w for _, w in h_relations(n, p, force)), names=names)


# ---------------------------------------------------------------------------
# Coset enumeration


@dataclass
class CosetTable:
    gens: int
    table: list[list[int]]  # coset x column -> coset; column 2g is x_{g+1}, 2g+1 its inverse
    status: str
    defined: int = 0  # total cosets ever defined
    max_live: int = 0

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def act(self, coset: int, w: Sequence[int]) -> int:
        for x in w:
            coset = self.table[coset][_col(x)]
        return coset

    def permutations(self) -> list[tuple[int, ...]]:
        """The action of each generator on cosets."""
        return [tuple(row[2 * g] for row in self.table) for g in range(self.gens)]

    def to_report(self) -> dict:
        return {
            "schema": 1,
            "status": self.status,
            "index": self.size if self.complete else None,
            "cosets_defined": self.defined,
            "max_live_cosets": self.max_live,
        }


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


class _Enumerator:
    def __init__(self, P: Presentation, max_cosets: int):
        self.P = P
        self.ncols = 2 * P.gens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_live = 1
        self.rels = [tuple(_col(x) for x in r) for r in P.relators]

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> bool:
        if self.live >= self.max_cosets:
            return False
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        return True

    def _merge(self, a: int, b: int, queue: list[int]):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = self.table[e]
            for x in range(self.ncols):
                f = row[x]
                if f is None:
                    continue
                if self.table[f][x ^ 1] == e:
                    self.table[f][x ^ 1] = None
                e1, f1 = self.find(e), self.find(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan(self, c: int, w: Sequence[int], fill: bool) -> bool:
        """Scan w at coset c, making deductions and coincidences.

        With ``fill`` undefined gaps are closed by defining new cosets; returns
        False only when that runs out of room.
        """
        T = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] is not None:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return True
            while j >= i and T[b][w[j] ^ 1] is not None:
                b = T[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return True
            if i == j:
                T[f][w[i]] = b
                T[b][w[i] ^ 1] = f
                return True
            if not fill:
                return True
            if not self.define(f, w[i]):
                return False

    def lookahead(self):
        for c in range(len(self.table)):
            if self.find(c) != c:
                continue
            for r in self.rels:
                self.scan(c, r, fill=False)
                if self.find(c) != c:
                    break

    def run(self) -> str:
        for w in self.P.subgroup:
            if not self.scan(0, tuple(_col(x) for x in w), fill=True):
                return "limit-exceeded"
        c = 0
        while c < len(self.table):
            if self.find(c) == c:
                for r in self.rels:
                    if not self.scan(c, r, fill=True):
                        # out of room: collapse what we can, then retry once
                        self.lookahead()
                        if self.find(c) != c:
                            break
                        if not self.scan(c, r, fill=True):
                            return "limit-exceeded"
                    if self.find(c) != c:
                        break
                else:
                    for x in range(self.ncols):
                        if self.table[c][x] is None and not self.define(c, x):
                            self.lookahead()
                            if self.find(c) != c:
                                break
                            if self.table[c][x] is None and not self.define(c, x):
                                return "limit-exceeded"
            c += 1
        return "complete"

    def result(self, status: str) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.find(c) == c]
        new = {c: t for t, c in enumerate(live)}
        rows = [[None if y is None else new[self.find(y)] for y in self.table[c]] for c in live]
        return CosetTable(self.P.gens, rows, status, defined=len(self.table), max_live=self.max_live)


def coset_enumerate(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    en = _Enumerator(P, max_cosets)
    status = en.run()
    return en.result(status)


def check_table(P: Presentation, T: CosetTable) -> bool:
    """Total, relators close at every coset, subgroup fixes coset 0, transitive."""
    if not T.complete:
        return False
    if any(y is None for row in T.table for y in row):
        return False
    for c in range(T.size):
        for r in P.relators:
            if T.act(c, r) != c:
                return False
    if any(T.act(0, w) != 0 for w in P.subgroup):
        return False
    seen, stack = {0}, [0]
    while stack:
        c = stack.pop()
        for y in T.table[c]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == T.size
