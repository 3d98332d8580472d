"""Exact matrices over Z and Z/m, alternating forms and transvections.

Matrices act on column vectors.  Integer entries are Python ints, so nothing
overflows no matter how long the braid word that produced them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import factorint

Rows = tuple[tuple[int, ...], ...]


class MatrixError(ValueError):
    pass


def _as_rows(rows: Iterable[Iterable[int]]) -> Rows:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if any(len(r) != len(out) for r in out):
        raise MatrixError("matrix must be square")
    return out


def _matmul(a: Rows, b: Rows) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def _identity_rows(n: int) -> Rows:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class IntegerMatrix:
    rows: Rows

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_rows(self.rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(_identity_rows(n))

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            _same_dim(self, other)
            return IntegerMatrix(_matmul(self.rows, other.rows))
        return tuple(sum(a * x for a, x in zip(r, other)) for r in self.rows)

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        _same_dim(self, other)
        return IntegerMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> IntegerMatrix:
        return IntegerMatrix([[c * a for a in r] for r in self.rows])

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(zip(*self.rows))

    def __pow__(self, k: int) -> IntegerMatrix:
        if k < 0:
            raise MatrixError("negative powers need an explicit inverse")
        result, base = IntegerMatrix.identity(self.dim), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.rows == _identity_rows(self.dim)

    def det(self) -> int:
        return determinant(self.rows)

    def to_json(self) -> dict:
        return {"dim": self.dim, "mod": None, "rows": [[str(x) for x in r] for r in self.rows]}


@dataclass(frozen=True)
class ModularMatrix:
    rows: Rows
    mod: int

    def __post_init__(self):
        if self.mod < 2:
            raise MatrixError(f"modulus must be >= 2, got {self.mod}")
        rows = _as_rows(self.rows)
        object.__setattr__(self, "rows", tuple(tuple(x % self.mod for x in r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, mod: int) -> ModularMatrix:
        return cls(_identity_rows(n), mod)

    def _check(self, other: ModularMatrix):
        _same_dim(self, other)
        if self.mod != other.mod:
            raise MatrixError(f"mixed moduli {self.mod} and {other.mod}")

    def __matmul__(self, other):
        if isinstance(other, ModularMatrix):
            self._check(other)
            return ModularMatrix(_matmul(self.rows, other.rows), self.mod)
        return tuple(sum(a * x for a, x in zip(r, other)) % self.mod for r in self.rows)

    def __pow__(self, k: int) -> ModularMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ModularMatrix.identity(self.dim, self.mod), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> ModularMatrix:
        return ModularMatrix(zip(*self.rows), self.mod)

    def is_identity(self) -> bool:
        return self.rows == _identity_rows(self.dim)

    def inverse(self) -> ModularMatrix:
        return ModularMatrix(inverse_mod(self.rows, self.mod), self.mod)

    def lift(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows)

    def encode(self) -> bytes:
        """Row-major base-m digits; one byte per digit when m <= 256, else two."""
        flat = [x for r in self.rows for x in r]
        if self.mod <= 256:
            return bytes(flat)
        return b"".join(x.to_bytes(2, "big") for x in flat)

    def key(self) -> int:
        """The integer whose base-m digits are the canonical encoding."""
        k = 0
        for r in self.rows:
            for x in r:
                k = k * self.mod + x
        return k

    @classmethod
    def decode(cls, data: bytes, dim: int, mod: int) -> ModularMatrix:
        if mod <= 256:
            flat = list(data)
        else:
            flat = [int.from_bytes(data[i:i + 2], "big") for i in range(0, len(data), 2)]
        if len(flat) != dim * dim:
            raise MatrixError("encoding length does not match dimension")
        return cls([flat[i * dim:(i + 1) * dim] for i in range(dim)], mod)

    def to_json(self) -> dict:
        return {"dim": self.dim, "mod": self.mod, "rows": [list(r) for r in self.rows]}


def _same_dim(a, b):
    if a.dim != b.dim:
        raise MatrixError(f"dimension mismatch: {a.dim} vs {b.dim}")


def matrix_from_json(data: dict | str) -> IntegerMatrix | ModularMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    rows = [[int(x) for x in r] for r in data["rows"]]
    if len(rows) != data["dim"]:
        raise MatrixError("row count does not match dim")
    if data.get("mod") is None:
        return IntegerMatrix(rows)
    return ModularMatrix(rows, data["mod"])


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact over Z."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _inverse_prime_power(rows: Rows, p: int, q: int) -> list[list[int]]:
    # Gauss-Jordan over the local ring Z/p^k: a unit pivot always exists
    n = len(rows)
    a = [[x % q for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % p), None)
        if piv is None:
            raise MatrixError("matrix is singular modulo %d" % q)
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, q)
        a[c] = [x * inv % q for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def inverse_mod(rows: Rows, m: int) -> list[list[int]]:
    """Inverse over Z/m, assembled from the prime-power factors by CRT."""
    factors = prime_power_factors(m)
    parts = [_inverse_prime_power(rows, p, p ** k) for p, k in factors]
    moduli = [p ** k for p, k in factors]
    n = len(rows)
    return [[_crt([part[i][j] for part in parts], moduli) for j in range(n)] for i in range(n)]


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    m = math.prod(moduli)
    x = 0
    for r, q in zip(residues, moduli):
        c = m // q
        x += r * c * pow(c, -1, q)
    return x % m


def prime_power_factors(m: int) -> list[tuple[int, int]]:
    return sorted(factorint(m).items())


# ---------------------------------------------------------------------------
# Alternating forms


@dataclass(frozen=True)
class AlternatingForm:
    gram: Rows

    def __post_init__(self):
        g = _as_rows(self.gram)
        n = len(g)
        for i in range(n):
            if g[i][i] != 0:
                raise MatrixError("alternating form needs a zero diagonal")
            for j in range(n):
                if g[i][j] != -g[j][i]:
                    raise MatrixError("Gram matrix is not antisymmetric")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        """<x, y> = x^T E y."""
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.dim) for j in range(self.dim))

    def matrix(self) -> IntegerMatrix:
        return IntegerMatrix(self.gram)

    def det(self) -> int:
        return determinant(self.gram)


def standard_J(half: int) -> AlternatingForm:
    """[[0, I], [-I, 0]] of size 2*half."""
    if half < 1:
        raise MatrixError("half-dimension must be >= 1")
    n = 2 * half
    g = [[0] * n for _ in range(n)]
    for i in range(half):
        g[i][half + i] = 1
        g[half + i][i] = -1
    return AlternatingForm(g)


def tridiagonal_form(N: int) -> AlternatingForm:
    """E[i+1][i] = 1, E[i][i+1] = -1: the pairing of consecutive chain classes."""
    if N < 2:
        raise MatrixError("tridiagonal form needs N >= 2")
    g = [[0] * N for _ in range(N)]
    for i in range(N - 1):
        g[i + 1][i] = 1
        g[i][i + 1] = -1
    return AlternatingForm(g)


def is_isometry(A: IntegerMatrix | ModularMatrix, E: AlternatingForm) -> bool:
    if A.dim != E.dim:
        raise MatrixError(f"dimension mismatch: {A.dim} vs {E.dim}")
    lhs = _matmul(_matmul(tuple(zip(*A.rows)), E.gram), A.rows)
    if isinstance(A, ModularMatrix):
        return all((x - y) % A.mod == 0 for r, s in zip(lhs, E.gram) for x, y in zip(r, s))
    return [list(r) for r in E.gram] == lhs


def fixes_vector(A: IntegerMatrix | ModularMatrix, u: Sequence[int]) -> bool:
    if len(u) != A.dim:
        raise MatrixError("vector length does not match matrix dimension")
    image = A @ tuple(u)
    if isinstance(A, ModularMatrix):
        return all((x - y) % A.mod == 0 for x, y in zip(image, u))
    return tuple(image) == tuple(u)


def transvection(v: Sequence[int], E: AlternatingForm, power: int = 1) -> IntegerMatrix:
    """Matrix of x -> x + power * <x, v> * v."""
    N = E.dim
    if len(v) != N:
        raise MatrixError("vector length does not match form dimension")
    if not any(v):
        raise MatrixError("transvection vector must be nonzero")
    # <x, v> = sum_j x_j * (E v)_j
    ev = [sum(E.gram[j][k] * v[k] for k in range(N)) for j in range(N)]
    return IntegerMatrix([[int(i == j) + power * v[i] * ev[j] for j in range(N)] for i in range(N)])


def reduce_mod(A: IntegerMatrix, m: int) -> ModularMatrix:
    return ModularMatrix(A.rows, m)


def _validate_factorization(m: int, factors: Sequence[int]) -> None:
    if math.prod(factors) != m:
        raise MatrixError(f"factors {list(factors)} do not multiply to {m}")
    for i, a in enumerate(factors):
        for b in factors[i + 1:]:
            if math.gcd(a, b) != 1:
                raise MatrixError(f"factors {a} and {b} are not coprime")


def crt_split(A: ModularMatrix, factors: Sequence[int] | None = None) -> tuple[ModularMatrix, ...]:
    """Components over Z/q for pairwise coprime q with prod q = m.

    Defaults to the prime-power factorization of the modulus.
    """
    if factors is None:
        factors = [p ** k for p, k in prime_power_factors(A.mod)]
    _validate_factorization(A.mod, factors)
    return tuple(ModularMatrix(A.rows, q) for q in factors)


def crt_join(parts: Sequence[ModularMatrix]) -> ModularMatrix:
    moduli = [P.mod for P in parts]
    m = math.prod(moduli)
    _validate_factorization(m, moduli)
    n = parts[0].dim
    if any(P.dim != n for P in parts):
        raise MatrixError("components have different dimensions")
    return ModularMatrix(
        [[_crt([P.rows[i][j] for P in parts], moduli) for j in range(n)] for i in range(n)], m
    )


def in_principal_congruence(A: IntegerMatrix, m: int) -> bool:
    """A in Sp(Z)[m]: symplectic for standard J and congruent to I mod m."""
    if A.dim % 2:
        return False
    ident = _identity_rows(A.dim)
    if any((x - y) % m for r, s in zip(A.rows, ident) for x, y in zip(r, s)):
        return False
    return is_isometry(A, standard_J(A.dim // 2))


# ---------------------------------------------------------------------------
# Church-Putman generators of Sp_{2n}(Z)[p]


def _block(n: int, tl=None, tr=None, bl=None, br=None) -> IntegerMatrix:
    m = [[int(i == j) for j in range(2 * n)] for i in range(2 * n)]
    for blk, (ro, co) in ((tl, (0, 0)), (tr, (0, n)), (bl, (n, 0)), (br, (n, n))):
        if blk is None:
            continue
        for (i, j), x in blk.items():
            m[ro + i][co + j] += x
    return IntegerMatrix(m)


def church_putman(kind: str, i: int, j: int, r: int, half: int) -> IntegerMatrix:
    """One of X_{i,j}(r), Y_{i,j}(r), Z_{i,j}(r), W_i(r), U_1(r) (1-indexed)."""
    n = half
    kind = kind.upper()
    if kind in ("X", "Y"):
        if not 1 <= i <= j <= n:
            raise MatrixError(f"{kind} needs 1 <= i <= j <= n")
        sym = {(i - 1, j - 1): r} if i == j else {(i - 1, j - 1): r, (j - 1, i - 1): r}
        return _block(n, bl=sym) if kind == "X" else _block(n, tr=sym)
    if kind == "Z":
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise MatrixError("Z needs 1 <= i, j <= n with i != j")
        # lower-right block is minus the transpose of the upper-left one
        return _block(n, tl={(i - 1, j - 1): r}, br={(j - 1, i - 1): -r})
    if kind == "W":
        if not 1 <= i < n:
            raise MatrixError("W needs 1 <= i < n")
        a = i - 1
        beta = {(a, a): r, (a, a + 1): r, (a + 1, a + 1): -r, (a + 1, a): -r}
        return _block(n, tl=beta, br={(b, a): -x for (a, b), x in beta.items()})
    if kind == "U":
        if not (i == 1 and j == 1):
            raise MatrixError("U is only defined for i = j = 1")
        return _block(n, tl={(0, 0): r}, tr={(0, 0): r}, bl={(0, 0): -r}, br={(0, 0): -r})
    raise MatrixError(f"unknown generator kind {kind!r}")


def church_putman_labels(half: int) -> list[tuple[str, int, int]]:
    n = half
    labels = []
    labels += [("X", i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    labels += [("Y", i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    labels += [("Z", i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    labels += [("W", i, i) for i in range(1, n)]
    labels.append(("U", 1, 1))
    return labels


def church_putman_set(p: int, half: int) -> list[IntegerMatrix]:
    if half < 2:
        raise MatrixError("the generating set is stated for n >= 2")
    return [church_putman(k, i, j, p, half) for k, i, j in church_putman_labels(half)]


# ---------------------------------------------------------------------------
# Lie-algebra side


def lie_check(A: Sequence[Sequence[int]] | ModularMatrix, half: int, l: int) -> bool:
    """A^T J + J A == 0 (mod l)."""
    rows = A.rows if isinstance(A, ModularMatrix) else _as_rows(A)
    J = standard_J(half).gram
    s = _matmul(tuple(zip(*rows)), J)
    t = _matmul(J, rows)
    return all((x + y) % l == 0 for r, q in zip(s, t) for x, y in zip(r, q))


def log_map(K: ModularMatrix, m: int, l: int) -> ModularMatrix:
    """((K - I) / m) mod l for K over Z/(m*l) with K = I mod m."""
    if K.mod != m * l:
        raise MatrixError(f"expected modulus {m * l}, got {K.mod}")
    out = []
    for i, r in enumerate(K.rows):
        row = []
        for j, x in enumerate(r):
            d = x - int(i == j)
            if d % m:
                raise MatrixError("matrix is not congruent to I modulo m")
            row.append(d // m)
        out.append(row)
    return ModularMatrix(out, l)


def ann_check(h: Sequence[Sequence[int]] | ModularMatrix, u: Sequence[int]) -> bool:
    """h lies in sp(Z/2) and annihilates u modulo 2."""
    rows = h.rows if isinstance(h, ModularMatrix) else _as_rows(h)
    if len(rows) % 2:
        return False
    if not lie_check(rows, len(rows) // 2, 2):
        return False
    return all(sum(a * x for a, x in zip(r, u)) % 2 == 0 for r in rows)


def sp_order(g: int, p: int) -> int:
    """|Sp_{2g}(F_p)|."""
    return p ** (g * g) * math.prod(p ** (2 * i) - 1 for i in range(1, g + 1))


def sp_lie_order(g: int, p: int) -> int:
    """|sp_{2g}(F_p)|."""
    return p ** (g * (2 * g + 1))


def symplectic_basis_change(E: AlternatingForm) -> IntegerMatrix:
    """An integral P with det +-1 and P^T E P = standard_J.

    Symplectic Gram-Schmidt over Z: unimodular column operations make the
    pairing of the current vector with the rest equal to (1, 0, ..., 0).
    """
    N = E.dim
    if N % 2 or abs(E.det()) != 1:
        raise MatrixError("form is degenerate over Z")
    basis = [[int(i == j) for i in range(N)] for j in range(N)]
    es, fs = [], []
    while basis:
        e, rest = basis[0], basis[1:]
        while True:
            vals = [E.pair(e, x) for x in rest]
            nz = [k for k, v in enumerate(vals) if v]
            if not nz:
                raise MatrixError("form is degenerate over Z")
            piv = min(nz, key=lambda k: abs(vals[k]))
            if len(nz) == 1:
                break
            for k in nz:
                if k != piv:
                    q = vals[k] // vals[piv]
                    rest[k] = [a - q * b for a, b in zip(rest[k], rest[piv])]
        if abs(vals[piv]) != 1:
            raise MatrixError("form is degenerate over Z")
        f = [vals[piv] * x for x in rest[piv]]  # vals[piv] = +-1
        others = [x for k, x in enumerate(rest) if k != piv]
        others = [[a + E.pair(f, x) * b for a, b in zip(x, e)] for x in others]
        es.append(e)
        fs.append(f)
        basis = others
    cols = es + fs
    return IntegerMatrix([[cols[c][r] for c in range(N)] for r in range(N)])
