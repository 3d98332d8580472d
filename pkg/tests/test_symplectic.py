import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcong.symplectic import (
    AlternatingForm,
    IntegerMatrix,
    MatrixError,
    ModularMatrix,
    ann_check,
    church_putman,
    church_putman_labels,
    church_putman_set,
    crt_join,
    crt_split,
    determinant,
    fixes_vector,
    in_principal_congruence,
    inverse_mod,
    is_isometry,
    lie_check,
    log_map,
    matrix_from_json,
    prime_power_factors,
    reduce_mod,
    sp_lie_order,
    sp_order,
    standard_J,
    symplectic_basis_change,
    transvection,
    tridiagonal_form,
)


def test_forms():
    assert standard_J(1).gram == ((0, 1), (-1, 0))
    J = standard_J(2).matrix()
    assert J.transpose() == -J
    assert standard_J(2).det() == 1
    assert tridiagonal_form(2).gram == ((0, -1), (1, 0))
    for N in (2, 4, 6, 8):
        assert tridiagonal_form(N).det() == 1
    assert tridiagonal_form(3).det() == 0
    E3 = tridiagonal_form(3)
    assert all(E3.pair((1, 0, 1), e) == 0 for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(MatrixError):
        AlternatingForm([[1, 0], [0, 0]])
    with pytest.raises(MatrixError):
        AlternatingForm([[0, 1], [1, 0]])


def test_transvection_examples():
    E = tridiagonal_form(2)
    assert transvection((1, 0), E).rows == ((1, 1), (0, 1))
    assert transvection((1, 0), E, 5).rows == ((1, 5), (0, 1))
    E4 = tridiagonal_form(4)
    T = transvection((1, 0, 0, 0), E4, 3)
    assert [r[:2] for r in T.rows[:2]] == [(1, 3), (0, 1)]
    v = (1, -2, 0, 3)
    assert T @ (1, 0, 0, 0) == (1, 0, 0, 0)
    assert transvection(v, E4) @ v == v
    with pytest.raises(MatrixError):
        transvection((0, 0), E)


def test_transvection_power_law():
    rng = random.Random(2)
    for _ in range(50):
        N = rng.choice([2, 4, 6])
        E = rng.choice([tridiagonal_form(N), standard_J(N // 2)])
        v = tuple(rng.randint(-3, 3) for _ in range(N))
        if not any(v):
            continue
        for a, b in ((rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)):
            Ta, Tb = transvection(v, E, a), transvection(v, E, b)
            assert Ta @ Tb == transvection(v, E, a + b)
            assert is_isometry(Ta, E)


def test_isometry():
    J = standard_J(2)
    assert is_isometry(IntegerMatrix.identity(4), J)
    assert is_isometry(church_putman("X", 1, 2, 3, 2), J)
    assert not is_isometry(IntegerMatrix([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), J)


def test_church_putman():
    X = church_putman("X", 1, 2, 3, 2)
    assert X.rows == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 3, 1, 0), (3, 0, 0, 1))
    with pytest.raises(MatrixError):
        church_putman("Z", 1, 1, 2, 2)
    with pytest.raises(MatrixError):
        church_putman("Q", 1, 1, 2, 2)
    U = church_putman("U", 1, 1, 5, 2)
    assert is_isometry(U, standard_J(2)) and in_principal_congruence(U, 5)
    for p in (2, 3, 5):
        for half in (2, 3):
            gens = church_putman_set(p, half)
            assert len(gens) == len(church_putman_labels(half))
            for A in gens:
                assert is_isometry(A, standard_J(half))
                assert in_principal_congruence(A, p)
                assert not A.is_identity()


def test_principal_congruence():
    assert in_principal_congruence(IntegerMatrix.identity(4), 7)
    T = transvection((1, 0, 0, 0), standard_J(2))
    assert not in_principal_congruence(T, 2)
    assert in_principal_congruence(transvection((1, 0, 0, 0), standard_J(2), 6), 3)


def test_modular_matrix_basics():
    A = ModularMatrix([[1, 2], [3, 4]], 5)
    assert A.rows == ((1, 2), (3, 4))
    assert (A @ A.inverse()).is_identity()
    assert (A ** -3 @ A ** 3).is_identity()
    assert ModularMatrix.decode(A.encode(), 2, 5) == A
    assert A.key() == ((1 * 5 + 2) * 5 + 3) * 5 + 4
    B = ModularMatrix([[300, 1], [0, 299]], 301)
    assert ModularMatrix.decode(B.encode(), 2, 301) == B
    assert matrix_from_json(A.to_json()) == A
    M = IntegerMatrix([[10 ** 30, 1], [-3, 0]])
    assert matrix_from_json(M.to_json()) == M
    with pytest.raises(MatrixError):
        A @ ModularMatrix([[1, 0], [0, 1]], 7)
    with pytest.raises(MatrixError):
        ModularMatrix([[1]], 1)


def test_inverse_mod_composite():
    rng = random.Random(4)
    for m in (4, 6, 12, 36, 30):
        for _ in range(20):
            while True:
                rows = [[rng.randrange(m) for _ in range(3)] for _ in range(3)]
                d = determinant(rows)
                if all(d % p for p, _ in prime_power_factors(m)):
                    break
            inv = inverse_mod(rows, m)
            assert ModularMatrix(rows, m) @ ModularMatrix(inv, m) == ModularMatrix.identity(3, m)
    with pytest.raises(MatrixError):
        inverse_mod([[2, 0], [0, 1]], 4)


def _random_symplectic(rng, half, m, steps=12):
    E = standard_J(half)
    A = IntegerMatrix.identity(2 * half)
    for _ in range(steps):
        v = [0] * (2 * half)
        v[rng.randrange(2 * half)] = 1
        if rng.random() < 0.5:
            v[rng.randrange(2 * half)] += rng.randint(-2, 2)
        if any(v):
            A = A @ transvection(v, E, rng.randint(-3, 3))
    return reduce_mod(A, m)


def test_crt_roundtrip():
    rng = random.Random(9)
    for m in (6, 12, 15, 30):
        for _ in range(1000):
            if rng.random() < 0.5:
                A = _random_symplectic(rng, 1, m, 6)
            else:
                A = ModularMatrix([[rng.randrange(m) for _ in range(2)] for _ in range(2)], m)
            parts = crt_split(A)
            assert [P.mod for P in parts] == [p ** k for p, k in prime_power_factors(m)]
            assert crt_join(parts) == A
    I = ModularMatrix.identity(2, 6)
    assert crt_split(I) == (ModularMatrix.identity(2, 2), ModularMatrix.identity(2, 3))
    with pytest.raises(ValueError):
        crt_split(I, [2, 2])


def test_log_map():
    K = reduce_mod(church_putman("X", 1, 2, 2, 2), 4)
    L = log_map(K, 2, 2)
    assert lie_check(L, 2, 2)
    assert log_map(ModularMatrix.identity(4, 4), 2, 2) == ModularMatrix([[0] * 4] * 4, 2)
    with pytest.raises(MatrixError):
        log_map(K, 3, 3)
    with pytest.raises(MatrixError):
        log_map(reduce_mod(transvection((1, 0, 0, 0), standard_J(2)), 4), 2, 2)


@pytest.mark.parametrize("m,l", [(2, 2), (3, 3)])
def test_log_map_additive(m, l):
    rng = random.Random(m)
    gens = [reduce_mod(A, m * l) for A in church_putman_set(m, 2)]
    for _ in range(200):
        K1 = ModularMatrix.identity(4, m * l)
        K2 = ModularMatrix.identity(4, m * l)
        for _ in range(rng.randint(1, 6)):
            K1 = K1 @ rng.choice(gens)
            K2 = K2 @ rng.choice(gens)
        lhs = log_map(K1 @ K2, m, l)
        a, b = log_map(K1, m, l), log_map(K2, m, l)
        assert lhs.rows == tuple(tuple((x + y) % l for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows))
        assert lie_check(lhs, 2, l)


def test_ann_check():
    u = (1, 0, 1, 0)
    assert ann_check([[0] * 4] * 4, u)
    # log of X_11(2) is the elementary matrix at (3, 1), which moves e_1 to e_3
    h11 = log_map(reduce_mod(church_putman("X", 1, 1, 2, 2), 4), 2, 2)
    assert not ann_check(h11, u)
    # log of X_22(2) only sees e_2, which u does not involve
    h22 = log_map(reduce_mod(church_putman("X", 2, 2, 2, 2), 4), 2, 2)
    assert ann_check(h22, u)
    # annihilates u but is not in the Lie algebra
    assert not ann_check([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], (0, 1, 0, 0))


def test_orders():
    assert sp_order(1, 3) == 24
    assert sp_order(1, 5) == 120
    assert sp_order(2, 3) == 51840
    assert sp_order(2, 2) == 720
    assert sp_lie_order(2, 2) == 1024
    assert sp_lie_order(2, 3) == 3 ** 10


def test_lie_count_brute_force():
    count = 0
    for flat in itertools.product(range(2), repeat=16):
        A = [flat[4 * i:4 * i + 4] for i in range(4)]
        count += lie_check(A, 2, 2)
    assert count == sp_lie_order(2, 2)


@pytest.mark.parametrize("N", [2, 4, 6, 8])
def test_basis_change(N):
    E = tridiagonal_form(N)
    P = symplectic_basis_change(E)
    assert abs(P.det()) == 1
    assert P.transpose() @ E.matrix() @ P == standard_J(N // 2).matrix()


def test_basis_change_standard():
    P = symplectic_basis_change(standard_J(2))
    assert P.transpose() @ standard_J(2).matrix() @ P == standard_J(2).matrix()
    with pytest.raises(MatrixError):
        symplectic_basis_change(tridiagonal_form(3))


def test_fixes_vector():
    E = tridiagonal_form(4)
    u = (1, 0, 1, 0)
    for i in range(3):
        e = [0] * 4
        e[i] = 1
        assert fixes_vector(transvection(e, E), u)
    assert not fixes_vector(transvection((0, 0, 0, 1), E), u)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4), st.integers(2, 40))
def test_reduce_matches_integer_product(entries, m):
    A = IntegerMatrix([entries[:2], entries[2:]])
    B = transvection((1, 0), tridiagonal_form(2), 3)
    assert reduce_mod(A @ B, m) == reduce_mod(A, m) @ reduce_mod(B, m)
