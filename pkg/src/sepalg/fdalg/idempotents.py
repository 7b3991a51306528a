"""Primitive idempotent decomposition of commutative algebras over a field."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import ConsistencyError, UsageError
from ..exactcore import linalg
from ..exactcore.poly import Polynomial, factor_polynomial, p_divmod, p_mul, p_xgcd, p_mod
from .algebra import Quotient, StructureAlgebra, ideal_algebra, quotient_algebra, require_commutative


def element_minpoly(a: StructureAlgebra, x) -> tuple:
    """Raw coefficients of the monic minimal polynomial of x (Krylov on 1, x, x^2, ...)."""
    F = a.field
    if a.dim == 0:
        return (F.one,)
    powers = [a.unit]
    cur = a.unit
    for _ in range(a.dim):
        cur = a.mul(cur, x)
        cols = [[p[i] for p in powers] for i in range(a.dim)]
        sol = linalg.solve(F, cols, cur, len(powers))
        if sol is not None:
            return tuple(F.neg(c) for c in sol[0]) + (F.one,)
        powers.append(cur)
    raise ConsistencyError("no annihilating polynomial up to the dimension")


def _frobenius_matrix(a: StructureAlgebra):
    q = a.field.order
    cols = [a.power(a.basis_vector(j), q) for j in range(a.dim)]
    return [[cols[j][i] for j in range(a.dim)] for i in range(a.dim)]


def nilradical(a: StructureAlgebra) -> list:
    """RREF basis of the nilradical of a commutative algebra."""
    require_commutative(a, "nilradical")
    F = a.field
    n = a.dim
    if n == 0:
        return []
    if F.characteristic == 0:
        from .separable import trace_form

        return linalg.span_basis(F, linalg.nullspace(F, trace_form(a), n), n)[0]
    # x is nilpotent iff x^(q^m) = 0 for q^m >= n; the kernels of the q-power
    # map and its iterates increase until they stabilize
    phi = _frobenius_matrix(a)
    M = phi
    prev = -1
    while True:
        ker = linalg.nullspace(F, M, n)
        if len(ker) == prev:
            return linalg.span_basis(F, ker, n)[0]
        prev = len(ker)
        M = linalg.matmul(F, phi, M)


def _newton_lift(a: StructureAlgebra, e):
    """Lift an idempotent modulo the nilradical: e <- 3e^2 - 2e^3."""
    F = a.field
    three, two = F.from_int(3), F.from_int(2)
    for _ in range(4 * max(a.dim, 1).bit_length() + 4):
        e2 = a.mul(e, e)
        if e2 == e:
            return e
        e3 = a.mul(e2, e)
        e = a.sub(a.scale(three, e2), a.scale(two, e3))
    raise ConsistencyError("idempotent lifting did not converge")


def _split_reduced_charp(abar: StructureAlgebra, seed: int):
    """Primitive idempotents of a reduced algebra over F_q via Frobenius-fixed points."""
    F = abar.field
    n = abar.dim
    phi = _frobenius_matrix(abar)
    for i in range(n):
        phi[i][i] = F.sub(phi[i][i], F.one)
    fixed = linalg.span_basis(F, linalg.nullspace(F, phi, n), n)[0]
    r = len(fixed)
    idems = [abar.unit]
    for s in fixed:
        if len(idems) == r:
            break
        roots = _split_roots(F, element_minpoly(abar, s), seed)
        refined = []
        for eps in idems:
            for a0 in roots:
                L = _lagrange(abar, s, a0, roots)
                f = abar.mul(eps, L)
                if not abar.is_zero(f):
                    refined.append(f)
        idems = refined
    if len(idems) != r:
        raise ConsistencyError(f"found {len(idems)} idempotents, expected {r}")
    return idems


def _split_roots(F, f, seed):
    roots = []
    for g, _ in factor_polynomial(Polynomial.raw(F, f), seed=seed):
        if g.degree != 1:
            raise ConsistencyError("Frobenius-fixed element has a non-split minimal polynomial")
        roots.append(F.neg(g.coeffs[0]))
    return roots


def _lagrange(a, s, root, roots):
    F = a.field
    out = a.unit
    for b in roots:
        if b == root:
            continue
        c = F.inv(F.sub(root, b))
        out = a.mul(out, a.scale(c, a.sub(s, a.scale(b, a.unit))))
    return out


def _split_reduced_char0(abar: StructureAlgebra, seed: int, max_degree: int):
    F = abar.field
    n = abar.dim
    rng = random.Random(seed)
    bound = 1
    for attempt in range(200):
        if attempt % 10 == 9:
            bound *= 2
        x = tuple(F.from_int(rng.randint(-bound, bound)) for _ in range(n))
        f = element_minpoly(abar, x)
        if len(f) - 1 == n:
            break
    else:
        raise ConsistencyError("no primitive element found in a reduced algebra")
    factors = factor_polynomial(Polynomial.raw(F, f), seed=seed, max_rational_degree=max_degree)
    if any(m != 1 for _, m in factors):
        raise ConsistencyError("minimal polynomial of a reduced algebra is not squarefree")
    out = []
    for g, _ in factors:
        cof, rem = p_divmod(F, f, g.coeffs)
        d, s, t = p_xgcd(F, cof, g.coeffs)
        if d != (F.one,):
            raise ConsistencyError("CRT cofactor is not coprime")
        poly = p_mod(F, p_mul(F, s, cof), f)
        out.append(abar.evaluate(poly, x))
    return out


@dataclass(frozen=True)
class IdempotentDecomposition:
    algebra: StructureAlgebra
    idempotents: tuple

    def __len__(self):
        return len(self.idempotents)

    def factors(self):
        """The factor algebras e A, as ``Embedded`` subalgebras."""
        return [ideal_algebra(self.algebra, e) for e in self.idempotents]

    def check(self) -> list:
        a = self.algebra
        fails = []
        total = a.zero_vector
        for i, e in enumerate(self.idempotents):
            if a.mul(e, e) != e:
                fails.append(f"idempotent {i} is not idempotent")
            for j in range(i + 1, len(self.idempotents)):
                if not a.is_zero(a.mul(e, self.idempotents[j])):
                    fails.append(f"idempotents {i}, {j} are not orthogonal")
            total = a.add(total, e)
        if total != a.unit:
            fails.append("idempotents do not sum to 1")
        return fails

    def to_json(self):
        F = self.algebra.field
        return {"count": len(self.idempotents),
                "idempotents": [[F.format(c) for c in e] for e in self.idempotents],
                "factor_dims": [f.algebra.dim for f in self.factors()]}


def primitive_idempotents(a: StructureAlgebra, *, seed: int = 0,
                          max_rational_degree: int = 24) -> IdempotentDecomposition:
    """Complete set of primitive orthogonal idempotents of a commutative algebra."""
    require_commutative(a, "primitive_idempotents")
    if a.grading is not None and a.is_graded:
        raise UsageError("primitive_idempotents expects an ungraded algebra")
    F = a.field
    if a.dim == 0:
        return IdempotentDecomposition(a, ())
    N = nilradical(a)
    q: Quotient = quotient_algebra(a, N, check_ideal=False)
    abar = q.algebra
    if F.characteristic == 0:
        small = _split_reduced_char0(abar, seed, max_rational_degree)
    else:
        small = _split_reduced_charp(abar, seed)
    lifted = [_newton_lift(a, q.lift(e)) for e in small]
    lifted.sort(key=lambda e: _sort_key(F, e))
    dec = IdempotentDecomposition(a, tuple(lifted))
    fails = dec.check()
    if fails:
        raise ConsistencyError("; ".join(fails))
    return dec


def _sort_key(F, e):
    # support pattern first, then coordinates
    return (tuple(c == F.zero for c in e), tuple(str(F.format(c)) for c in e))
