import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sepalg.errors import UsageError
from sepalg.exactcore import (GF, QQ, ExactMatrix, Polynomial, default_modulus, factor_polynomial,
                              field_from_json, is_irreducible, minimal_polynomial, solve_linear)
from sepalg.exactcore import linalg

FIELDS = [GF(2), GF(3), GF(5), GF(4), GF(8), GF(9), QQ]


def elements(F):
    if F.is_finite:
        return st.sampled_from(list(F.elements()))
    return st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))


# -- fields ---------------------------------------------------------------------------

@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms(F):
    @given(elements(F), elements(F), elements(F))
    @settings(max_examples=60, deadline=None)
    def check(a, b, c):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == F.zero
        assert F.mul(a, F.one) == a
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one

    check()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16, 25, 27])
def test_finite_field_order_and_frobenius(q):
    F = GF(q)
    els = list(F.elements())
    assert len(els) == q == F.order
    # x^q = x for all x
    assert all(F.pow(x, q) == x for x in els)
    nonzero = [x for x in els if x != F.zero]
    assert any(all(F.pow(g, k) != F.one for k in range(1, q - 1)) for g in nonzero)


def test_default_modulus_is_irreducible_and_least():
    for p, d in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)]:
        m = default_modulus(p, d)
        F = GF(p)
        assert is_irreducible(F, m)
        x = sympy.symbols("x")
        assert sympy.Poly(list(reversed(m)), x, modulus=p).is_irreducible


def test_field_json_round_trip():
    for F in FIELDS:
        assert field_from_json(F.to_json()) == F
        for a in list(F.elements())[:9] if F.is_finite else [Fraction(3, 7), Fraction(-2)]:
            assert F.parse(F.format(a)) == a


def test_bad_field_inputs():
    with pytest.raises(UsageError):
        GF(6)
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


# -- linear algebra -------------------------------------------------------------------

def _matrix(F, rows, cols):
    return st.lists(st.lists(elements(F), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.mark.parametrize("F", [GF(2), GF(3), GF(9), QQ], ids=str)
def test_solve_residual_and_kernel(F):
    @given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
        lambda c: st.tuples(_matrix(F, r, c), st.lists(elements(F), min_size=r, max_size=r)))))
    @settings(max_examples=40, deadline=None)
    def check(data):
        A, b = data
        n = len(A[0])
        res = linalg.solve(F, A, b, n)
        rk = linalg.rank(F, A, n)
        if res is None:
            aug = [list(r) + [v] for r, v in zip(A, b)]
            assert linalg.rank(F, aug, n + 1) == rk + 1
            return
        x, kernel = res
        assert list(linalg.matvec(F, A, x)) == list(b)
        assert len(kernel) == n - rk
        for k in kernel:
            assert all(v == F.zero for v in linalg.matvec(F, A, k))

    check()


def test_rank_against_sympy_over_q():
    rng = random.Random(4)
    for _ in range(30):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = [[Fraction(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)]
        if rng.random() < 0.5 and r > 1:
            A[-1] = [A[0][j] * 2 - A[1 % r][j] for j in range(c)]
        assert linalg.rank(QQ, A, c) == sympy.Matrix(A).rank()


def test_rank_against_sympy_mod_p():
    rng = random.Random(5)
    for p in (2, 3, 7, 2_147_483_647):
        F = GF(p)
        for _ in range(15):
            r, c = rng.randint(1, 5), rng.randint(1, 5)
            A = [[rng.randrange(min(p, 5)) for _ in range(c)] for _ in range(r)]
            assert linalg.rank(F, A, c) == _rank_mod_p(A, p)


def _rank_mod_p(A, p):
    # plain Gaussian elimination on python ints, independent of the library paths
    A = [list(r) for r in A]
    rank, col = 0, 0
    rows, cols = len(A), len(A[0])
    while rank < rows and col < cols:
        piv = next((i for i in range(rank, rows) if A[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        for i in range(rows):
            if i != rank and A[i][col] % p:
                f = A[i][col] * inv
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
        col += 1
    return rank


@pytest.mark.parametrize("F", [GF(3), GF(4), QQ], ids=str)
def test_inverse_and_determinant(F):
    rng = random.Random(11)
    for n in range(1, 5):
        for _ in range(10):
            A = [[F.random(rng) for _ in range(n)] for _ in range(n)]
            inv = linalg.inverse(F, A)
            det = linalg.determinant(F, A)
            if inv is None:
                assert det == F.zero
            else:
                assert det != F.zero
                assert linalg.matmul(F, A, inv) == linalg.identity(F, n)


def test_exact_matrix_solve():
    M = ExactMatrix(QQ, [["1", "2"], ["3", "4"]])
    x, kernel = solve_linear(M, ["5", "6"])
    assert x == (Fraction(-4), Fraction(9, 2)) and kernel == []
    with pytest.raises(UsageError):
        ExactMatrix(QQ, [[1, 2], [3]])


# -- polynomials ----------------------------------------------------------------------

def _sympy_factor_degrees(coeffs, p=None):
    x = sympy.symbols("x")
    if p is None:
        poly = sympy.Poly(list(reversed(coeffs)), x, domain="QQ")
        _, facs = sympy.factor_list(poly)
    else:
        poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
        _, facs = poly.factor_list()
    return sorted((f.degree(), m) for f, m in facs)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_factor_mod_p_against_sympy(p):
    F = GF(p)
    rng = random.Random(p)
    for _ in range(25):
        d = rng.randint(1, 9)
        coeffs = [rng.randrange(p) for _ in range(d)] + [1]
        f = Polynomial(F, coeffs)
        facs = factor_polynomial(f, seed=1)
        prod = Polynomial(F, [1])
        for g, m in facs:
            assert g.is_monic() and is_irreducible(F, g.coeffs)
            prod = prod * g ** m
        assert prod.coeffs == f.coeffs
        assert sorted((g.degree, m) for g, m in facs) == _sympy_factor_degrees(coeffs, p)


def test_factor_over_q_against_sympy():
    rng = random.Random(7)
    x = sympy.symbols("x")
    cases = [[-1, 0, 0, 0, 0, 0, 1], [0, 0, -1, 0, 1], [2, 0, 1], [-2, 0, 0, 0, 1], [1, 1, 1, 1, 1]]
    for _ in range(20):
        factors = [[rng.randint(-3, 3) for _ in range(rng.randint(1, 3))] + [1] for _ in range(rng.randint(1, 3))]
        prod = sympy.Integer(1)
        for c in factors:
            prod *= sympy.Poly(list(reversed(c)), x).as_expr()
        cases.append([int(c) for c in reversed(sympy.Poly(prod, x).all_coeffs())])
    for coeffs in cases:
        f = Polynomial(QQ, coeffs)
        facs = factor_polynomial(f)
        prod = Polynomial(QQ, [1])
        for g, m in facs:
            prod = prod * g ** m
        assert prod.monic().coeffs == f.monic().coeffs
        assert sorted((g.degree, m) for g, m in facs) == _sympy_factor_degrees(coeffs)


def _brute_minpoly_degree(F, M):
    """Least d such that some monic polynomial of degree d kills M, by enumeration."""
    n = len(M)
    powers = [linalg.identity(F, n)]
    for _ in range(n):
        powers.append(linalg.matmul(F, powers[-1], M))
    els = list(F.elements())
    import itertools
    for d in range(1, n + 1):
        for lower in itertools.product(els, repeat=d):
            acc = [[F.zero] * n for _ in range(n)]
            for k, c in enumerate(lower + (F.one,)):
                for i in range(n):
                    for j in range(n):
                        acc[i][j] = F.add(acc[i][j], F.mul(c, powers[k][i][j]))
            if all(v == F.zero for r in acc for v in r):
                return d
    raise AssertionError


@pytest.mark.parametrize("F", [GF(2), GF(3)], ids=str)
def test_minimal_polynomial_against_enumeration(F):
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 3)
        M = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        mp = minimal_polynomial(ExactMatrix(F, M))
        assert mp.degree == _brute_minpoly_degree(F, M)
        # mp(M) = 0
        acc = [[F.zero] * n for _ in range(n)]
        P = linalg.identity(F, n)
        for c in mp.coeffs:
            acc = [[F.add(acc[i][j], F.mul(c, P[i][j])) for j in range(n)] for i in range(n)]
            P = linalg.matmul(F, P, M)
        assert all(v == F.zero for r in acc for v in r)


def test_polynomial_division_identity():
    F = GF(5)
    rng = random.Random(2)
    for _ in range(30):
        f = Polynomial(F, [rng.randrange(5) for _ in range(rng.randint(1, 8))])
        g = Polynomial(F, [rng.randrange(5) for _ in range(rng.randint(1, 4))] + [1])
        q, r = divmod(f, g)
        assert (q * g + r).coeffs == f.coeffs
        assert r.degree < g.degree
