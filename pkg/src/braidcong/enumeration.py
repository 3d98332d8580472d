"""Breadth-first closure of finitely generated groups of matrices over Z/m.

Elements are stored as one ``(order, N, N)`` int64 array in discovery order;
membership goes through the canonical key (row-major base-m digits read as a
number, or the digit bytes when that number does not fit in 63 bits).
Frontiers are multiplied by all generators at once with numpy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .braid import pure_generator, sigma
from .report import Report
from .rep import rep_space, rho_mod
from .symplectic import (
    ModularMatrix,
    church_putman,
    church_putman_set,
    prime_power_factors,
    reduce_mod,
    sp_lie_order,
    sp_order,
    standard_J,
)

DEFAULT_LIMIT = 200_000


class LimitExceeded(RuntimeError):
    def __init__(self, limit: int, reached: int):
        super().__init__(f"closure exceeds limit {limit} (reached {reached} elements)")
        self.limit = limit
        self.reached = reached


def _key_fn(N: int, m: int):
    if m ** (N * N) < 2 ** 63:
        weights = np.array([m ** (N * N - 1 - t) for t in range(N * N)], dtype=np.int64)
        return lambda arr: (arr.reshape(len(arr), -1) @ weights).tolist()
    dtype = np.uint8 if m <= 256 else np.dtype(">u2")
    return lambda arr: [row.tobytes() for row in arr.reshape(len(arr), -1).astype(dtype)]


@dataclass
class FiniteMatrixGroup:
    mod: int
    dim: int
    generators: list[ModularMatrix]
    array: np.ndarray
    complete: bool = True
    parents: np.ndarray | None = None
    parent_gens: np.ndarray | None = None
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._key = _key_fn(self.dim, self.mod)
        if not self._index:
            self._index = {k: i for i, k in enumerate(self._key(self.array))}

    @property
    def order(self) -> int:
        return len(self.array)

    def __len__(self):
        return self.order

    def __iter__(self):
        for X in self.array:
            yield ModularMatrix(X.tolist(), self.mod)

    def element(self, i: int) -> ModularMatrix:
        return ModularMatrix(self.array[i].tolist(), self.mod)

    def keys(self) -> set:
        return set(self._index)

    def contains(self, A: ModularMatrix) -> bool:
        if A.mod != self.mod or A.dim != self.dim:
            return False
        return self._key(np.array([A.rows], dtype=np.int64))[0] in self._index

    __contains__ = contains

    def witness(self, A: ModularMatrix) -> list[int]:
        """Generator indices g_1..g_r with A = gens[g_1] @ ... @ gens[g_r]."""
        if self.parents is None:
            raise ValueError("group was built without witnesses")
        i = self._index[self._key(np.array([A.rows], dtype=np.int64))[0]]
        out = []
        while i:
            out.append(int(self.parent_gens[i]))
            i = int(self.parents[i])
        return out[::-1]

    def is_abelian(self) -> bool:
        gens = [np.array(g.rows, dtype=np.int64) for g in self.generators]
        m = self.mod
        return all(
            np.array_equal(a @ b % m, b @ a % m) for a, b in itertools.combinations(gens, 2)
        )

    def element_orders(self) -> np.ndarray:
        X = self.array
        ident = np.eye(self.dim, dtype=np.int64)
        orders = np.zeros(len(X), dtype=np.int64)
        P = X.copy()
        k = 1
        pending = np.arange(len(X))
        while len(pending):
            hit = np.all(P == ident, axis=(1, 2))
            orders[pending[hit]] = k
            pending, P = pending[~hit], P[~hit]
            if k > self.order:
                raise RuntimeError("element order exceeds group order; closure is incomplete")
            P = P @ X[pending] % self.mod
            k += 1
        return orders

    def exponent(self) -> int:
        return math.lcm(*(int(x) for x in np.unique(self.element_orders())))

    def orbit(self, u: Sequence[int]) -> set[tuple[int, ...]]:
        m = self.mod
        start = tuple(int(x) % m for x in u)
        gens = [np.array(g.rows, dtype=np.int64) for g in self.generators]
        seen = {start}
        frontier = [start]
        while frontier:
            F = np.array(frontier, dtype=np.int64)
            frontier = []
            for g in gens:
                for v in map(tuple, (F @ g.T % m).tolist()):
                    if v not in seen:
                        seen.add(v)
                        frontier.append(v)
        return seen

    def stabilizer_order(self, u: Sequence[int]) -> int:
        v = np.array([int(x) % self.mod for x in u], dtype=np.int64)
        images = self.array @ v % self.mod
        return int(np.all(images == v, axis=1).sum())

    def to_report(self, with_exponent: bool = False) -> dict:
        return {
            "schema": 1,
            "generators": [g.to_json() for g in self.generators],
            "mod": self.mod,
            "order": self.order,
            "abelian": self.is_abelian(),
            "exponent": self.exponent() if with_exponent and self.complete else None,
            "limit_hit": not self.complete,
        }


def bfs_generate(
    gens: Sequence[ModularMatrix],
    limit: int = DEFAULT_LIMIT,
    witnesses: bool = False,
    allow_partial: bool = False,
) -> FiniteMatrixGroup:
    if not gens:
        raise ValueError("need at least one generator")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    m, N = gens[0].mod, gens[0].dim
    for g in gens:
        if g.mod != m or g.dim != N:
            raise ValueError("generators must share modulus and dimension")
    key = _key_fn(N, m)
    G = np.array([g.rows for g in gens], dtype=np.int64)
    ident = np.eye(N, dtype=np.int64)[None]
    chunks = [ident]
    parents, pgens = [0], [0]
    index = {key(ident)[0]: 0}
    frontier, frontier_idx = ident, np.array([0])
    complete = True
    while len(frontier):
        # element-major, generator-minor ordering keeps discovery deterministic
        P = np.einsum("fij,gjk->fgik", frontier, G) % m
        P = P.reshape(-1, N, N)
        new_rows, new_par, new_gen = [], [], []
        for t, k in enumerate(key(P)):
            if k not in index:
                index[k] = len(index)
                new_rows.append(t)
                new_par.append(frontier_idx[t // len(gens)])
                new_gen.append(t % len(gens))
        if len(index) > limit:
            if not allow_partial:
                raise LimitExceeded(limit, len(index))
            complete = False
            keep = limit - (len(index) - len(new_rows))
            new_rows, new_par, new_gen = new_rows[:keep], new_par[:keep], new_gen[:keep]
            index = dict(itertools.islice(index.items(), limit))
        start = sum(len(c) for c in chunks)
        frontier = P[new_rows]
        frontier_idx = np.arange(start, start + len(new_rows))
        chunks.append(frontier)
        parents += new_par
        pgens += new_gen
        if not complete:
            break
    return FiniteMatrixGroup(
        m, N, list(gens), np.concatenate(chunks),
        complete=complete,
        parents=np.array(parents) if witnesses else None,
        parent_gens=np.array(pgens) if witnesses else None,
        _index=index,
    )


def same_group(G: FiniteMatrixGroup, H: FiniteMatrixGroup) -> bool:
    return G.mod == H.mod and G.dim == H.dim and G.order == H.order and G.keys() == H.keys()


def is_subgroup(H: FiniteMatrixGroup, G: FiniteMatrixGroup) -> bool:
    return H.mod == G.mod and H.dim == G.dim and H.keys() <= G.keys()


def recognize_symmetric(G: FiniteMatrixGroup, n: int) -> bool:
    """Is G isomorphic to S_n?  Searches for Coxeter generators t_1..t_{n-1} of G."""
    if n > 6:
        raise ValueError("exhaustive search is limited to n <= 6")
    if n < 2 or G.order != math.factorial(n):
        return False
    m = G.mod
    X = G.array
    ident = np.eye(G.dim, dtype=np.int64)
    sq = np.einsum("aij,ajk->aik", X, X) % m
    invol = [X[i] for i in np.nonzero(np.all(sq == ident, axis=(1, 2)))[0] if not np.array_equal(X[i], ident)]

    def order_is(a: np.ndarray, k: int) -> bool:
        P = a
        for e in range(1, k):
            if np.array_equal(P, ident):
                return False
            P = P @ a % m
        return np.array_equal(P, ident)

    def search(chosen: list[np.ndarray]) -> list[np.ndarray] | None:
        if len(chosen) == n - 1:
            gens = [ModularMatrix(t.tolist(), m) for t in chosen]
            H = bfs_generate(gens, limit=G.order + 1)
            return chosen if H.order == G.order else None
        for t in invol:
            if chosen:
                if not order_is(chosen[-1] @ t % m, 3):
                    continue
                if any(not np.array_equal(s @ t % m, t @ s % m) for s in chosen[:-1]):
                    continue
            found = search(chosen + [t])
            if found is not None:
                return found
        return None

    return search([]) is not None


# ---------------------------------------------------------------------------
# Desk-scale verifications


def rep_image(n: int, m: int, limit: int = DEFAULT_LIMIT) -> FiniteMatrixGroup:
    return bfs_generate([rho_mod(sigma(i, n), m) for i in range(1, n)], limit)


def pure_image(n: int, m: int, limit: int = DEFAULT_LIMIT) -> FiniteMatrixGroup:
    gens = [rho_mod(pure_generator(i, j, n), m) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return bfs_generate(gens, limit)


def expected_rep_order(n: int, p: int) -> int:
    """|rho_p(B_n)|: Sp_{n-1}(F_p) for odd n, the stabilizer of a nonzero vector for even n."""
    if n % 2:
        return sp_order((n - 1) // 2, p)
    h = n // 2
    return sp_order(h, p) // (p ** (2 * h) - 1)


def ann_order(h: int) -> int:
    """|{x in sp_{2h}(F_2) : x u = 0}| for a nonzero u."""
    return 2 ** (h * (2 * h - 1))


def theorem_b_order(n: int, m: int) -> int:
    odd, two_power = _split_level(m)
    total = math.prod(expected_rep_order(n, p) for p in odd)
    if two_power == 4:
        total *= sp_lie_order((n - 1) // 2, 2) if n % 2 else ann_order(n // 2)
    return total


def _split_level(m: int) -> tuple[list[int], int]:
    factors = dict(prime_power_factors(m))
    two = factors.pop(2, 0)
    if two not in (1, 2) or any(k != 1 for k in factors.values()) or not factors:
        raise ValueError(f"level must be 2*p1*...*pk or 4*p1*...*pk with distinct odd primes, got {m}")
    return sorted(factors), 2 ** two


def acampo_check(n: int, p: int, limit: int = DEFAULT_LIMIT) -> Report:
    rep = Report("acampo", {"n": n, "p": p})
    G = rep_image(n, p, limit)
    rep.check(f"image-order[n={n},p={p}]", expected_rep_order(n, p), G.order)
    if n % 2 == 0:
        u = rep_space(n).fixed_vector
        rep.check(f"image-fixes-u[n={n},p={p}]", G.order, G.stabilizer_order(u))
    return rep


def stabilizer_crosscheck(n: int, p: int, limit: int = DEFAULT_LIMIT) -> Report:
    """For even n: B_{n+1} acts on the same space; orbit-stabilizer of u there."""
    rep = Report("acampo-stabilizer", {"n": n, "p": p})
    full = rep_image(n + 1, p, limit)
    u = rep_space(n).fixed_vector
    orbit = full.orbit(u)
    stab = full.stabilizer_order(u)
    rep.check("full-order", sp_order(n // 2, p), full.order)
    rep.check("orbit-size", p ** n - 1, len(orbit))
    rep.check("orbit-stabilizer", full.order, len(orbit) * stab)
    image = rep_image(n, p, limit)
    rep.check("stabilizer-order", image.order, stab)
    rep.check("image-in-stabilizer", True, is_subgroup(image, full) and image.stabilizer_order(u) == image.order)
    return rep


def verify_exact_sequence_32(a: int, b: int, half: int = 2, limit: int = DEFAULT_LIMIT) -> Report:
    if a == b:
        raise ValueError("the primes must be distinct")
    rep = Report("lemma32", {"a": a, "b": b, "half": half})
    G = bfs_generate([reduce_mod(M, b) for M in church_putman_set(a, half)], limit)
    ref_gens = [
        reduce_mod(church_putman(kind, i, j, 1, half), b)
        for kind in "XY" for i in range(1, half + 1) for j in range(i, half + 1)
    ]
    ref = bfs_generate(ref_gens, limit)
    rep.check("image-order", sp_order(half, b), G.order)
    rep.check("reference-order", sp_order(half, b), ref.order)
    rep.check("image-equals-reference", True, same_group(G, ref))
    return rep


def _lie_residues(G: FiniteMatrixGroup, m: int, l: int) -> np.ndarray:
    X = G.array
    ident = np.eye(G.dim, dtype=np.int64)
    D = X - ident
    if np.any(D % m):
        raise ValueError("group is not inside the level-m kernel")
    return (D // m) % l


def _lie_ok(L: np.ndarray, half: int, l: int) -> np.ndarray:
    J = np.array(standard_J(half).gram, dtype=np.int64)
    S = np.swapaxes(L, 1, 2) @ J + J @ L
    return np.all(S % l == 0, axis=(1, 2))


def kernel_by_brute_force(half: int, p: int) -> int:
    """Count I + pA mod p^2 (A mod p) that are symplectic: the kernel Sp(Z/p^2) -> Sp(Z/p)."""
    N = 2 * half
    count = 0
    J = np.array(standard_J(half).gram, dtype=np.int64)
    q = p * p
    for chunk in itertools.islice(_batched(itertools.product(range(p), repeat=N * N), 1 << 16), None):
        A = np.array(chunk, dtype=np.int64).reshape(-1, N, N)
        K = (np.eye(N, dtype=np.int64) + p * A) % q
        S = (np.swapaxes(K, 1, 2) @ J @ K - J) % q
        count += int(np.all(S == 0, axis=(1, 2)).sum())
    return count


def lie_algebra_count(half: int, l: int) -> int:
    """|{A mod l : A^T J + J A = 0}| by exhaustive search."""
    N = 2 * half
    count = 0
    for chunk in _batched(itertools.product(range(l), repeat=N * N), 1 << 16):
        A = np.array(chunk, dtype=np.int64).reshape(-1, N, N)
        count += int(_lie_ok(A, half, l).sum())
    return count


def annihilator_count(half: int, u: Sequence[int]) -> int:
    N = 2 * half
    v = np.array(u, dtype=np.int64) % 2
    count = 0
    for chunk in _batched(itertools.product(range(2), repeat=N * N), 1 << 16):
        A = np.array(chunk, dtype=np.int64).reshape(-1, N, N)
        ok = _lie_ok(A, half, 2) & np.all((A @ v) % 2 == 0, axis=1)
        count += int(ok.sum())
    return count


def _batched(it, size):
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def verify_cp_kernel_generation(p: int, half: int = 2, limit: int = DEFAULT_LIMIT) -> Report:
    rep = Report("cp-kernel", {"p": p, "half": half})
    G = bfs_generate([reduce_mod(M, p * p) for M in church_putman_set(p, half)], limit)
    rep.check("kernel-order", sp_lie_order(half, p), G.order)
    rep.check("abelian", True, G.is_abelian())
    rep.check("exponent", p, G.exponent())
    L = _lie_residues(G, p, p)
    rep.check("lie-check-failures", 0, int((~_lie_ok(L, half, p)).sum()))
    distinct = len({row.tobytes() for row in L.reshape(len(L), -1)})
    rep.check("log-map-injective", G.order, distinct)
    return rep


def verify_prop34(half: int = 2) -> Report:
    """Sp(Z)[2]/Sp(Z)[4] against sp(Z/2): orders, abelian, exponent, log bijection."""
    rep = Report("prop34", {"m": 2, "l": 2, "half": half})
    G = bfs_generate([reduce_mod(M, 4) for M in church_putman_set(2, half)])
    rep.check("kernel-order-bfs", sp_lie_order(half, 2), G.order)
    rep.check("kernel-order-brute-force", G.order, kernel_by_brute_force(half, 2))
    rep.check("abelian", True, G.is_abelian())
    rep.check("exponent", 2, G.exponent())
    lie = lie_algebra_count(half, 2)
    rep.check("lie-algebra-count", sp_lie_order(half, 2), lie)
    L = _lie_residues(G, 2, 2)
    rep.check("log-image-in-lie-algebra", True, bool(_lie_ok(L, half, 2).all()))
    distinct = len({row.tobytes() for row in L.reshape(len(L), -1)})
    rep.check("log-map-bijective", lie, distinct)
    return rep


def verify_theorem_b(n: int, m: int, limit: int = DEFAULT_LIMIT) -> Report:
    rep = Report("theorem-b", {"n": n, "m": m})
    expected = theorem_b_order(n, m)
    G = pure_image(n, m, limit)
    rep.check(f"pure-image-order[n={n},m={m}]", expected, G.order)
    return rep


def verify_newman_smart(m: int = 6, samples: int = 1000, seed: int = 0, limit: int = DEFAULT_LIMIT) -> Report:
    import random

    from .symplectic import crt_join, crt_split

    rep = Report("newman-smart", {"m": m, "samples": samples, "seed": seed})
    G = rep_image(3, m, limit)
    rep.check("sp2-order", sp_order_mod(1, m), G.order)
    comps = [rep_image(3, p ** k, limit).order for p, k in prime_power_factors(m)]
    rep.check("order-is-product", math.prod(comps), G.order)
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        A = G.element(rng.randrange(G.order))
        if crt_join(crt_split(A)) != A:
            bad += 1
    rep.check("crt-roundtrip-failures", 0, bad)
    return rep


def sp_order_mod(g: int, m: int) -> int:
    """|Sp_{2g}(Z/m)|, multiplicative over prime powers."""
    return math.prod(
        sp_order(g, p) * sp_lie_order(g, p) ** (k - 1) for p, k in prime_power_factors(m)
    )
