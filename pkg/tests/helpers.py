"""Random instance generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random

from sepalg.exactcore import linalg
from sepalg.exactcore.poly import deg, p_deriv, p_gcd
from sepalg.fdalg import (
    StructureAlgebra,
    change_basis,
    direct_product,
    exterior_algebra,
    monogenic,
    tensor_product,
)


def random_monic(F, d, rng):
    return tuple(F.random(rng) for _ in range(d)) + (F.one,)


def is_squarefree(F, f) -> bool:
    return deg(p_gcd(F, f, p_deriv(F, f))) == 0


def random_squarefree(F, d, rng):
    while True:
        f = random_monic(F, d, rng)
        if is_squarefree(F, f):
            return f


def random_invertible(F, n, rng, blocks=None):
    """Random invertible n x n matrix; ``blocks`` restricts nonzero entries to equal labels."""
    while True:
        M = [[F.random(rng) if blocks is None or blocks[r] == blocks[c] else F.zero for c in range(n)]
             for r in range(n)]
        if n == 0 or linalg.inverse(F, M) is not None:
            return M


def _dims(rng, max_dim, max_factor=3):
    total = rng.randint(1, max_dim)
    dims = []
    while sum(dims) < total:
        dims.append(rng.randint(1, min(max_factor, total - sum(dims))))
    return dims


def random_commutative(F, rng, max_dim=6, *, etale=False):
    """A product of monogenic algebras F[x]/(f) in a random basis."""
    factors = []
    for d in _dims(rng, max_dim):
        f = random_squarefree(F, d, rng) if etale else random_monic(F, d, rng)
        factors.append(monogenic(F, f))
    a = direct_product(*factors)
    return change_basis(a, random_invertible(F, a.dim, rng))


def random_graded(F, rng, max_dim=6):
    """Even commutative algebra tensor an exterior algebra, so the odd part is nonzero."""
    r = rng.choice([1, 1, 2])
    ext = exterior_algebra(F, r)
    even = random_commutative(F, rng, max(1, max_dim // ext.dim))
    a = tensor_product(even, ext)
    P = random_invertible(F, a.dim, rng, blocks=a.grading)
    b = change_basis(a, P)
    return StructureAlgebra(F, b.dim, b.structure, b.unit, b.basis, a.grading)


def rng_for(*key):
    return random.Random(repr(key))


# -- brute-force oracles ---------------------------------------------------------------

def all_vectors(F, n):
    return itertools.product(list(F.elements()), repeat=n)


def brute_idempotents(a):
    F = a.field
    return [tuple(x) for x in all_vectors(F, a.dim) if a.mul(tuple(x), tuple(x)) == tuple(x)]


def brute_primitive_idempotents(a):
    """Nonzero idempotents that are not a sum of two orthogonal nonzero idempotents."""
    idem = [e for e in brute_idempotents(a) if not a.is_zero(e)]
    S = set(idem)
    out = []
    for e in idem:
        split = False
        for f in idem:
            g = a.sub(e, f)
            if g in S and a.is_zero(a.mul(f, g)):
                split = True
                break
        if not split:
            out.append(e)
    return sorted(out)


def brute_separable(a) -> bool:
    """Search A (x) A for e with mu(e) = 1 and (x (x) 1) e = (1 (x) x) e."""
    F = a.field
    n = a.dim
    for coeffs in all_vectors(F, n * n):
        mu = a.zero_vector
        for i in range(n):
            for j in range(n):
                c = coeffs[i * n + j]
                if c != F.zero:
                    mu = a.add(mu, a.scale(c, a.basis_product(i, j)))
        if mu != a.unit:
            continue
        ok = True
        for l in range(n):
            left = [F.zero] * (n * n)
            right = [F.zero] * (n * n)
            for i in range(n):
                for j in range(n):
                    c = coeffs[i * n + j]
                    if c == F.zero:
                        continue
                    li = a.basis_product(l, i)
                    lj = a.basis_product(l, j)
                    for r in range(n):
                        left[r * n + j] = F.add(left[r * n + j], F.mul(c, li[r]))
                        right[i * n + r] = F.add(right[i * n + r], F.mul(c, lj[r]))
            if left != right:
                ok = False
                break
        if ok:
            return True
    return False


def brute_subgroups(G):
    """All subsets of G closed under multiplication (finite, so subgroups)."""
    from sepalg.grp import compose

    elems = [g for g in G.elements if g != G.identity]
    out = []
    for r in range(len(elems) + 1):
        for sub in itertools.combinations(elems, r):
            S = set(sub) | {G.identity}
            if all(compose(x, y) in S for x in S for y in S):
                out.append(frozenset(S))
    return out
