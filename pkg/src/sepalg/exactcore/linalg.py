"""Dense exact linear algebra over a ``Field``.

Matrices are row-major lists (or tuples) of raw field values.  Everything is
driven by reduced row echelon form, which is unique, so the numpy fast path
used for word-sized prime fields returns the same answer as the generic one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from ..errors import UsageError
from .fields import Field, PrimeField, RationalField

_NUMPY_PRIME_BOUND = 1 << 31


def _use_numpy(F: Field) -> bool:
    return isinstance(F, PrimeField) and F.p < _NUMPY_PRIME_BOUND


def rref(F: Field, rows: Sequence[Sequence], ncols: int | None = None, *, generic: bool = False):
    """Return ``(R, pivots)``: the nonzero rows of the RREF and their pivot columns."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise UsageError("ragged matrix")
    if not rows or ncols == 0:
        return [], []
    if _use_numpy(F) and not generic:
        return _rref_modp(F.p, rows, ncols)
    if isinstance(F, RationalField) and not generic:
        return _rref_rational(rows, ncols)
    return _rref_generic(F, rows, ncols)


def _rref_generic(F, A, ncols):
    zero = F.zero
    sub, mul, inv = F.sub, F.mul, F.inv
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][c])
        prow = A[r]
        for j in range(c, ncols):
            if prow[j] != zero:
                prow[j] = mul(prow[j], s)
        nz = [j for j in range(c, ncols) if prow[j] != zero]
        for i in range(m):
            if i == r:
                continue
            f = A[i][c]
            if f == zero:
                continue
            row = A[i]
            for j in nz:
                row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def _rref_rational(rows, ncols):
    # fraction-free Gauss-Jordan on integer rows, dividing out the content as we go
    A = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        A.append(_primitive([x.numerator * (den // x.denominator) for x in fr]))
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        pv = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(m):
            if i == r or not A[i][c]:
                continue
            row = A[i]
            f = row[c]
            g = gcd(pv, f)
            a, b = pv // g, f // g
            if a != 1:
                row = [a * x for x in row]
            for j in nz:
                row[j] -= b * prow[j]
            A[i] = _primitive(row)
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(A[:r], pivots):
        pv = row[c]
        out.append([Fraction(x, pv) if x else Fraction(0) for x in row])
    return out, pivots


def _rref_modp(p, rows, ncols):
    A = np.array(rows, dtype=np.int64) % p
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        s = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * s % p
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            A[np.ix_(others, np.arange(c, ncols))] = (
                A[np.ix_(others, np.arange(c, ncols))] - np.outer(col[others], A[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return A[:r].tolist(), pivots


def rank(F: Field, rows, ncols=None) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: Field, rows, ncols: int) -> list[tuple]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column."""
    R, pivots = rref(F, rows, ncols)
    return _kernel_from_rref(F, R, pivots, ncols)


def _kernel_from_rref(F, R, pivots, ncols):
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for row, c in zip(R, pivots):
            if row[f] != F.zero:
                v[c] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def solve(F: Field, rows, b, ncols: int | None = None):
    """Solve ``rows . x = b``.  Returns ``(x, kernel_basis)`` or ``None``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if len(b) != len(rows):
        raise UsageError(f"right-hand side has length {len(b)}, expected {len(rows)}")
    if not rows:
        return tuple([F.zero] * ncols), [tuple(F.one if i == j else F.zero for i in range(ncols))
                                         for j in range(ncols)]
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    kernel = _kernel_from_rref(F, [row[:ncols] for row in R], pivots, ncols)
    return tuple(x), kernel


def matmul(F: Field, A, B):
    zero = F.zero
    add, mul = F.add, F.mul
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [zero] * n
        for k, a in enumerate(row):
            if a != zero:
                for j, b in enumerate(B[k]):
                    if b != zero:
                        acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def matvec(F: Field, A, v):
    zero = F.zero
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = zero
        for a, x in zip(row, v):
            if a != zero and x != zero:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return tuple(out)


def identity(F: Field, n: int):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def inverse(F: Field, A):
    n = len(A)
    if any(len(r) != n for r in A):
        raise UsageError("inverse of a non-square matrix")
    aug = [list(r) + e for r, e in zip(A, identity(F, n))]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in R[:n]]


def determinant(F: Field, A):
    n = len(A)
    if any(len(r) != n for r in A):
        raise UsageError("determinant of a non-square matrix")
    M = [list(r) for r in A]
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        s = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c] != F.zero:
                f = F.mul(M[i][c], s)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return det


def span_basis(F: Field, vectors, ncols: int):
    """Canonical (RREF) basis of the span, with pivot columns."""
    if not vectors:
        return [], []
    R, pivots = rref(F, vectors, ncols)
    return [tuple(r) for r in R], pivots


def coordinates_in_rref_basis(basis, pivots, v, F: Field):
    """Coordinates of v in an RREF basis; ``None`` when v is outside the span."""
    coords = [v[c] for c in pivots]
    # check v - sum coords_i basis_i == 0
    residual = list(v)
    for a, row in zip(coords, basis):
        if a != F.zero:
            for j, x in enumerate(row):
                if x != F.zero:
                    residual[j] = F.sub(residual[j], F.mul(a, x))
    if any(x != F.zero for x in residual):
        return None
    return tuple(coords)


@dataclass(frozen=True)
class ExactMatrix:
    """An immutable matrix over an exact field."""

    field: Field
    entries: tuple

    def __init__(self, field: Field, entries, cols: int | None = None):
        rows = tuple(tuple(field.parse(x) if not _is_raw(field, x) else x for x in r) for r in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(field, identity(field, n), n)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int):
        return cls(field, [[field.zero] * cols for _ in range(rows)], cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise UsageError(f"shape mismatch {self.shape} @ {other.shape}")
            return ExactMatrix(self.field, matmul(self.field, self.entries, other.entries), other.cols)
        if len(other) != self.cols:
            raise UsageError("vector length mismatch")
        return matvec(self.field, self.entries, other)

    def __add__(self, other):
        F = self.field
        return ExactMatrix(F, [[F.add(a, b) for a, b in zip(r, s)]
                               for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other):
        F = self.field
        return ExactMatrix(F, [[F.sub(a, b) for a, b in zip(r, s)]
                               for r, s in zip(self.entries, other.entries)], self.cols)

    @property
    def T(self):
        return ExactMatrix(self.field, transpose(self.entries, self.cols), self.rows)

    def rank(self) -> int:
        return rank(self.field, self.entries, self.cols)

    def nullspace(self) -> list[tuple]:
        return nullspace(self.field, self.entries, self.cols)

    def nullity(self) -> int:
        return self.cols - self.rank()

    def rref(self):
        return rref(self.field, self.entries, self.cols)

    def inverse(self):
        inv = inverse(self.field, self.entries)
        return None if inv is None else ExactMatrix(self.field, inv, self.rows)

    def det(self):
        return determinant(self.field, self.entries)

    def pow(self, n: int):
        result = ExactMatrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(x == self.field.zero for r in self.entries for x in r)

    def to_json(self):
        return [[self.field.format(x) for x in r] for r in self.entries]


def _is_raw(F, x):
    if isinstance(F, PrimeField):
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < F.p
    if F.kind == "rationals":
        from fractions import Fraction

        return isinstance(x, Fraction)
    return isinstance(x, tuple) and len(x) == F.degree


def solve_linear(m: ExactMatrix, b):
    """Solve ``m x = b`` exactly.  Returns ``(x, kernel_basis)`` or ``None``."""
    b = tuple(m.field.parse(v) if not _is_raw(m.field, v) else v for v in b)
    if len(b) != m.rows:
        raise UsageError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    return solve(m.field, m.entries, b, m.cols)
