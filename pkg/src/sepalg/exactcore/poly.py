"""Univariate polynomials over exact fields, and their factorization.

Coefficient tuples are little-endian (index = exponent) and trimmed, so the
zero polynomial is ``()``.  Over finite fields factorization runs squarefree
decomposition, distinct-degree splitting and Cantor-Zassenhaus equal-degree
splitting driven by a seeded ``random.Random``.  Over Q it reduces modulo a good
prime, Hensel-lifts, and recombines factors (Zassenhaus), capped by degree.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import CapacityError, DomainError, UsageError
from .fields import Field, PrimeField, QQ, is_prime

DEFAULT_MAX_RATIONAL_DEGREE = 24


# -- raw coefficient-tuple arithmetic --------------------------------------

def trim(F: Field, c) -> tuple:
    c = list(c)
    while c and c[-1] == F.zero:
        c.pop()
    return tuple(c)


def deg(f) -> int:
    return len(f) - 1


def p_add(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return trim(F, [F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def p_sub(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return trim(F, [F.sub(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def p_neg(F, f):
    return tuple(F.neg(a) for a in f)


def p_scale(F, a, f):
    if a == F.zero:
        return ()
    return trim(F, [F.mul(a, x) for x in f])


def p_mul(F, f, g):
    if not f or not g:
        return ()
    z = F.zero
    add, mul = F.add, F.mul
    out = [z] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != z:
            for j, b in enumerate(g):
                if b != z:
                    out[i + j] = add(out[i + j], mul(a, b))
    return trim(F, out)


def p_divmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lc = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if c == F.zero:
            continue
        c = F.mul(c, inv_lc)
        q[k - dg] = c
        for i, b in enumerate(g):
            if b != F.zero:
                f[k - dg + i] = F.sub(f[k - dg + i], F.mul(c, b))
    return trim(F, q), trim(F, f[:dg])


def p_mod(F, f, g):
    return p_divmod(F, f, g)[1]


def p_monic(F, f):
    if not f:
        return ()
    return p_scale(F, F.inv(f[-1]), f)


def p_gcd(F, f, g):
    """Monic gcd (``()`` when both are zero)."""
    while g:
        f, g = g, p_mod(F, f, g)
    return p_monic(F, f)


def p_xgcd(F, f, g):
    """Return ``(d, s, t)`` with ``s f + t g = d`` and d monic."""
    r0, r1 = f, g
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = p_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(F, s0, p_mul(F, q, s1))
        t0, t1 = t1, p_sub(F, t0, p_mul(F, q, t1))
    if not r0:
        return (), (), ()
    u = F.inv(r0[-1])
    return p_scale(F, u, r0), p_scale(F, u, s0), p_scale(F, u, t0)


def p_deriv(F, f):
    return trim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def p_powmod(F, f, n: int, m):
    result = (F.one,)
    base = p_mod(F, f, m)
    while n:
        if n & 1:
            result = p_mod(F, p_mul(F, result, base), m)
        base = p_mod(F, p_mul(F, base, base), m)
        n >>= 1
    return p_mod(F, result, m) if len(m) > 1 else ()


def p_eval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def p_x(F):
    return (F.zero, F.one)


# -- the Polynomial value type ---------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Polynomial over ``field``; ``coeffs`` little-endian, trimmed."""

    field: Field
    coeffs: tuple

    def __init__(self, field: Field, coeffs: Sequence = ()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", trim(field, (field.parse(c) for c in coeffs)))

    @classmethod
    def raw(cls, field, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", trim(field, coeffs))
        return obj

    @classmethod
    def x(cls, field):
        return cls.raw(field, p_x(field))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self):
        return Polynomial.raw(self.field, p_monic(self.field, self.coeffs))

    def _other(self, g):
        if isinstance(g, Polynomial):
            if g.field != self.field:
                raise UsageError("polynomials over different fields")
            return g.coeffs
        return trim(self.field, (self.field.parse(g),))

    def __add__(self, g):
        return Polynomial.raw(self.field, p_add(self.field, self.coeffs, self._other(g)))

    __radd__ = __add__

    def __sub__(self, g):
        return Polynomial.raw(self.field, p_sub(self.field, self.coeffs, self._other(g)))

    def __rsub__(self, g):
        return Polynomial.raw(self.field, p_sub(self.field, self._other(g), self.coeffs))

    def __mul__(self, g):
        return Polynomial.raw(self.field, p_mul(self.field, self.coeffs, self._other(g)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial.raw(self.field, (self.field.one,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, g):
        q, r = p_divmod(self.field, self.coeffs, self._other(g))
        return Polynomial.raw(self.field, q), Polynomial.raw(self.field, r)

    def __floordiv__(self, g):
        return divmod(self, g)[0]

    def __mod__(self, g):
        return divmod(self, g)[1]

    def __call__(self, x):
        return p_eval(self.field, self.coeffs, self.field.parse(x))

    def derivative(self):
        return Polynomial.raw(self.field, p_deriv(self.field, self.coeffs))

    def gcd(self, g):
        return Polynomial.raw(self.field, p_gcd(self.field, self.coeffs, self._other(g)))

    def to_json(self):
        return [self.field.format(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.field.zero:
                continue
            cs = self.field.format(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == self.field.one:
                terms.append(mono)
            elif mono:
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"{cs}")
        return " + ".join(terms)


# -- finite fields ---------------------------------------------------------

def is_irreducible(F: Field, f) -> bool:
    """Ben-Or test over a finite field."""
    f = p_monic(F, trim(F, f))
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    x = p_x(F)
    h = x
    for _ in range(n // 2):
        h = p_powmod(F, h, q, f)
        if deg(p_gcd(F, p_sub(F, h, x), f)) > 0:
            return False
    return True


def _pth_root_poly(F, f):
    p = F.characteristic
    return trim(F, [F.pth_root(f[i]) for i in range(0, len(f), p)])


def squarefree_ff(F, f) -> list[tuple[tuple, int]]:
    """Squarefree decomposition of a monic f over F_q: ``[(g_i, i)]``."""
    out = []
    i = 1
    c = p_gcd(F, f, p_deriv(F, f))
    w = p_divmod(F, f, c)[0]
    while deg(w) > 0:
        y = p_gcd(F, w, c)
        fac = p_divmod(F, w, y)[0]
        if deg(fac) > 0:
            out.append((fac, i))
        w = y
        c = p_divmod(F, c, y)[0]
        i += 1
    if deg(c) > 0:
        p = F.characteristic
        for g, j in squarefree_ff(F, _pth_root_poly(F, c)):
            out.append((g, j * p))
    return out


def distinct_degree(F, f) -> list[tuple[tuple, int]]:
    """Split a monic squarefree f into products of equal-degree irreducibles."""
    q = F.order
    x = p_x(F)
    out = []
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = p_powmod(F, h, q, f)
        g = p_gcd(F, p_sub(F, h, x), f)
        if deg(g) > 0:
            out.append((g, d))
            f = p_divmod(F, f, g)[0]
            h = p_mod(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(F, f, d: int, rng: random.Random) -> list[tuple]:
    """Cantor-Zassenhaus: split a monic squarefree product of degree-d irreducibles."""
    n = deg(f)
    if n == d:
        return [f]
    q = F.order
    p = F.characteristic
    while True:
        a = trim(F, [F.random(rng) for _ in range(n)])
        if deg(a) < 1:
            continue
        g = p_gcd(F, a, f)
        if 0 < deg(g) < n:
            break
        if p == 2:
            # absolute trace to F_2 kills half of each residue field
            k = (q.bit_length() - 1) * d
            b = a
            t = a
            for _ in range(k - 1):
                t = p_mod(F, p_mul(F, t, t), f)
                b = p_add(F, b, t)
        else:
            b = p_sub(F, p_powmod(F, a, (q ** d - 1) // 2, f), (F.one,))
        g = p_gcd(F, b, f)
        if 0 < deg(g) < n:
            break
    h = p_divmod(F, f, g)[0]
    return equal_degree(F, g, d, rng) + equal_degree(F, h, d, rng)


def _factor_ff(F, f, rng):
    out = []
    for g, m in squarefree_ff(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, m))
    return out


# -- rationals -------------------------------------------------------------

def _int_poly(f) -> tuple[list[int], Fraction]:
    """Primitive integer polynomial g and rational c with f = c g."""
    den = 1
    for a in f:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in f]
    cont = 0
    for a in ints:
        cont = math.gcd(cont, a)
    if ints[-1] < 0:
        cont = -cont
    return [a // cont for a in ints], Fraction(cont, den)


def _squarefree_q(f):
    """Yun's algorithm over Q for monic f."""
    F = QQ
    out = []
    df = p_deriv(F, f)
    b = p_gcd(F, f, df)
    c = p_divmod(F, f, b)[0]
    d = p_sub(F, p_divmod(F, df, b)[0], p_deriv(F, c))
    i = 1
    while deg(c) > 0:
        a = p_gcd(F, c, d)
        if deg(a) > 0:
            out.append((a, i))
        c = p_divmod(F, c, a)[0]
        d = p_sub(F, p_divmod(F, d, a)[0], p_deriv(F, c))
        i += 1
    return out


def _zmod(poly, m):
    """Symmetric residues mod m, trimmed."""
    h = m // 2
    out = [((a + h) % m) - h for a in poly]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _zdivides(f, g):
    """Exact division of integer polynomials: f / g or None."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    q = [0] * (len(f) - dg) if len(f) > dg else []
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if c == 0:
            continue
        if c % lc:
            return None
        c //= lc
        q[k - dg] = c
        for i, b in enumerate(g):
            f[k - dg + i] -= c * b
    if any(f[:dg]):
        return None
    while q and q[-1] == 0:
        q.pop()
    return q


def _hensel_pair(f, u, v, p, k):
    """Lift f = u v (mod p), u monic, to f = U V (mod p^k)."""
    Fp = PrimeField(p)
    u_p = tuple(a % p for a in u)
    v_p = trim(Fp, [a % p for a in v])
    d, s, t = p_xgcd(Fp, u_p, v_p)
    if d != (1,):
        raise DomainError("Hensel lifting needs coprime factors")
    U, V = list(u), list(v)
    m = p
    for _ in range(1, k):
        uv = _zmul(U, V)
        e = [((f[i] if i < len(f) else 0) - (uv[i] if i < len(uv) else 0)) for i in range(max(len(f), len(uv)))]
        if any(x % m for x in e):
            raise AssertionError("Hensel invariant broken")
        e = trim(Fp, [(x // m) % p for x in e])
        if e:
            te = p_mul(Fp, t, e)
            qq, du = p_divmod(Fp, te, u_p)
            dv = p_add(Fp, p_mul(Fp, s, e), p_mul(Fp, v_p, qq))
            U = [(U[i] if i < len(U) else 0) + m * (du[i] if i < len(du) else 0) for i in range(max(len(U), len(du)))]
            V = [(V[i] if i < len(V) else 0) + m * (dv[i] if i < len(dv) else 0) for i in range(max(len(V), len(dv)))]
        m *= p
    return _zmod(U, m), _zmod(V, m)


ZASSENHAUS_PRIMES = 6


def _zassenhaus(g):
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(g) - 1
    if n <= 1:
        return [g]
    lc = g[-1]
    dg = [i * g[i] for i in range(1, len(g))]
    # factor modulo several good primes: the degree patterns cut down the possible factor
    # degrees, and the prime with the fewest modular factors is the one lifted
    allowed = None
    best = None
    p, tried = 3, 0
    while tried < ZASSENHAUS_PRIMES:
        if lc % p and is_prime(p):
            Fp = PrimeField(p)
            gp = trim(Fp, [a % p for a in g])
            if deg(p_gcd(Fp, gp, trim(Fp, [a % p for a in dg]))) == 0:
                tried += 1
                mods_p = [list(h) for h, _ in _factor_ff(Fp, p_monic(Fp, gp), random.Random(p))]
                sums = {0}
                for h in mods_p:
                    sums |= {x + len(h) - 1 for x in sums}
                allowed = sums if allowed is None else allowed & sums
                if allowed == {0, n} or len(mods_p) == 1:
                    return [g]
                if best is None or len(mods_p) < len(best[1]):
                    best = (p, mods_p)
        p += 2
    p, mods = best
    norm = math.isqrt(sum(a * a for a in g)) + 1
    bound = 2 * abs(lc) * (2 ** n) * norm
    k = 1
    while p ** k <= bound:
        k += 1
    pk = p ** k
    # lift the factorization one monic factor at a time
    lifted = []
    rest = list(g)
    for i, u in enumerate(mods[:-1]):
        v = [lc]
        for w in mods[i + 1:]:
            v = [a % p for a in _zmul(v, w)]
        U, rest = _hensel_pair(rest, u, v, p, k)
        lifted.append(U)
    lc_inv = pow(lc, -1, pk)
    lifted.append(_zmod([a * lc_inv for a in rest], pk))

    factors = []
    remaining = list(range(len(lifted)))
    f = list(g)
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for S in combinations(remaining, s):
            if sum(len(lifted[i]) - 1 for i in S) not in allowed:
                continue
            cand = [f[-1]]
            for i in S:
                cand = _zmod(_zmul(cand, lifted[i]), pk)
            cont = 0
            for a in cand:
                cont = math.gcd(cont, a)
            cand = [a // cont for a in cand]
            q = _zdivides(f, cand)
            if q is not None:
                factors.append(cand)
                f = q
                remaining = [i for i in remaining if i not in S]
                found = True
                break
        if not found:
            s += 1
    factors.append(f)
    return factors


def _factor_q(f, max_degree):
    if deg(f) > max_degree:
        raise CapacityError(f"rational factorization limited to degree {max_degree}, got {deg(f)}")
    out = []
    for s, m in _squarefree_q(f):
        g, _ = _int_poly(s)
        for h in _zassenhaus(g):
            if h[-1] < 0:
                h = [-a for a in h]
            out.append((p_monic(QQ, tuple(Fraction(a) for a in h)), m))
    return out


# -- public entry points ---------------------------------------------------

def factor_polynomial(f: Polynomial, *, seed: int = 0,
                      max_rational_degree: int = DEFAULT_MAX_RATIONAL_DEGREE):
    """Monic irreducible factors with multiplicities.

    ``leading * prod(g**m)`` reproduces ``f``.  Factors are sorted by
    (degree, coefficients) so the output does not depend on the seed.
    """
    F = f.field
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    monic = p_monic(F, f.coeffs)
    if deg(monic) == 0:
        return []
    if F.is_finite:
        raw = _factor_ff(F, monic, random.Random(seed))
    elif F.kind == "rationals":
        raw = _factor_q(monic, max_rational_degree)
    else:
        raise UsageError(f"factorization over {F} not supported")
    merged: dict[tuple, int] = {}
    for g, m in raw:
        merged[g] = merged.get(g, 0) + m
    items = sorted(merged.items(), key=lambda gm: (deg(gm[0]), _sort_key(F, gm[0])))
    return [(Polynomial.raw(F, g), m) for g, m in items]


def _sort_key(F, g):
    return tuple(repr(F.format(c)) for c in reversed(g))


def minimal_polynomial(action) -> Polynomial:
    """Minimal polynomial of a square ``ExactMatrix`` (monic, least degree)."""
    from .linalg import solve

    F = action.field
    n = action.rows
    if action.cols != n:
        raise UsageError("minimal polynomial of a non-square matrix")
    if n == 0:
        return Polynomial.raw(F, (F.one,))
    powers = [identity_flat(F, n)]
    M = action
    cur = action.__class__.identity(F, n)
    for k in range(1, n + 1):
        cur = cur @ M
        v = [x for row in cur.entries for x in row]
        cols = powers
        A = [[cols[j][i] for j in range(len(cols))] for i in range(n * n)]
        sol = solve(F, A, v, len(cols))
        if sol is not None:
            c = sol[0]
            return Polynomial.raw(F, tuple(F.neg(x) for x in c) + (F.one,))
        powers.append(v)
    raise AssertionError("Cayley-Hamilton violated")  # unreachable


def identity_flat(F, n):
    return [F.one if i == j else F.zero for i in range(n) for j in range(n)]
