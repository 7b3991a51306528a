"""Finite-dimensional algebras given by structure constants.

A ``StructureAlgebra`` stores the products of basis vectors as a sparse list
``(i, j, k, c)`` meaning ``b_i * b_j`` has coefficient ``c`` on ``b_k``, a unit
vector, optional parities (a Z/2-grading) and an optional group action by
algebra automorphisms.  Vectors are tuples of raw field values; matrices act
on column vectors, so column ``j`` of an action matrix is the image of ``b_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Sequence

from ..errors import ConsistencyError, UsageError
from ..exactcore.fields import Field
from ..exactcore import linalg


def _norm(F, x):
    return x if linalg._is_raw(F, x) else F.parse(x)


@dataclass(frozen=True)
class GroupAction:
    """Generator-indexed automorphism matrices for a ``PermGroup``."""

    group: object
    matrices: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(tuple(tuple(r) for r in m) for m in self.matrices))

    @cached_property
    def _elements(self):
        from ..grp import extend_to_group

        F = self._field
        n = len(self.matrices[0]) if self.matrices else 0
        images, bad = extend_to_group(
            self.group, self.matrices,
            lambda A, B: tuple(tuple(r) for r in linalg.matmul(F, A, B)),
            tuple(tuple(r) for r in linalg.identity(F, n)))
        return images, bad

    def bind(self, field: Field):
        object.__setattr__(self, "_field", field)
        return self

    def element_matrix(self, g):
        images, bad = self._elements
        if bad is not None:
            raise UsageError(f"group action violates a relation at element {bad[0]}, generator {bad[1]}")
        return images[g]

    def relation_failure(self):
        return self._elements[1]


@dataclass(frozen=True)
class StructureAlgebra:
    field: Field
    dim: int
    structure: tuple
    unit: tuple
    basis: tuple = ()
    grading: tuple | None = None
    action: GroupAction | None = dc_field(default=None, compare=True)

    def __post_init__(self):
        F = self.field
        n = self.dim
        if n < 0:
            raise UsageError("negative dimension")
        acc: dict[tuple, object] = {}
        for entry in self.structure:
            try:
                i, j, k, c = entry
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad structure entry {entry!r}") from exc
            if not all(isinstance(t, int) and 0 <= t < n for t in (i, j, k)):
                raise UsageError(f"structure index out of range in {entry!r}")
            key = (i, j, k)
            acc[key] = F.add(acc.get(key, F.zero), _norm(F, c))
        structure = tuple((i, j, k, c) for (i, j, k), c in sorted(acc.items()) if c != F.zero)
        object.__setattr__(self, "structure", structure)
        unit = tuple(_norm(F, u) for u in self.unit)
        if len(unit) != n:
            raise UsageError(f"unit has length {len(unit)}, expected {n}")
        object.__setattr__(self, "unit", unit)
        basis = tuple(self.basis) if self.basis else tuple(f"b{i}" for i in range(n))
        if len(basis) != n:
            raise UsageError("wrong number of basis labels")
        object.__setattr__(self, "basis", basis)
        if self.grading is not None:
            g = tuple(int(x) % 2 for x in self.grading)
            if len(g) != n:
                raise UsageError("wrong number of parities")
            object.__setattr__(self, "grading", g)
        if self.action is not None:
            if any(len(m) != n or any(len(r) != n for r in m) for m in self.action.matrices):
                raise UsageError("action matrices have the wrong size")
            self.action.bind(F)

    # -- arithmetic ---------------------------------------------------------

    @cached_property
    def table(self):
        """``table[i][j]`` is the tuple of ``(k, c)`` terms of ``b_i b_j``."""
        t = [[[] for _ in range(self.dim)] for _ in range(self.dim)]
        for i, j, k, c in self.structure:
            t[i][j].append((k, c))
        return [[tuple(cell) for cell in row] for row in t]

    @property
    def zero_vector(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i):
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def basis_product(self, i, j):
        F = self.field
        out = [F.zero] * self.dim
        for k, c in self.table[i][j]:
            out[k] = c
        return tuple(out)

    def mul(self, x, y):
        F = self.field
        zero = F.zero
        add, fmul = F.add, F.mul
        out = [zero] * self.dim
        table = self.table
        ys = [(j, yj) for j, yj in enumerate(y) if yj != zero]
        for i, xi in enumerate(x):
            if xi == zero:
                continue
            row = table[i]
            for j, yj in ys:
                cell = row[j]
                if cell:
                    xy = fmul(xi, yj)
                    for k, c in cell:
                        out[k] = add(out[k], fmul(xy, c))
        return tuple(out)

    def add(self, x, y):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def scale(self, c, x):
        F = self.field
        return tuple(F.mul(c, a) for a in x)

    def power(self, x, n: int):
        result = self.unit
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def is_zero(self, x) -> bool:
        return all(a == self.field.zero for a in x)

    def left_matrix(self, x):
        """Matrix of ``y -> x y`` (column j is ``x b_j``)."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def trace(self, x):
        M = self.left_matrix(x)
        return self.field.sum(M[i][i] for i in range(self.dim))

    def evaluate(self, poly_coeffs, x):
        """Horner evaluation of a raw coefficient tuple at ``x``."""
        acc = self.zero_vector
        for c in reversed(poly_coeffs):
            acc = self.add(self.mul(acc, x), self.scale(c, self.unit))
        return acc

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field.parse(c) for c in coords))

    def gens(self):
        return [AlgebraElement(self, self.basis_vector(i)) for i in range(self.dim)]

    def one(self):
        return AlgebraElement(self, self.unit)

    @property
    def is_graded(self):
        return self.grading is not None and any(self.grading)

    def parity(self, i):
        return self.grading[i] if self.grading is not None else 0

    def is_commutative(self) -> bool:
        if self.grading is not None:
            return not _graded_comm_failures(self)
        return all(self.basis_product(i, j) == self.basis_product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def with_action(self, action: GroupAction | None):
        return StructureAlgebra(self.field, self.dim, self.structure, self.unit, self.basis,
                                self.grading, action)

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim}, field={self.field})"


class AlgebraElement:
    """Operator sugar over coordinate vectors."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureAlgebra, coords):
        if len(coords) != algebra.dim:
            raise UsageError("coordinate vector has the wrong length")
        self.algebra = algebra
        self.coords = tuple(coords)

    def _c(self, other):
        if isinstance(other, AlgebraElement):
            return other.coords
        return self.algebra.scale(self.algebra.field.parse(other), self.algebra.unit)

    def __add__(self, other):
        return AlgebraElement(self.algebra, self.algebra.add(self.coords, self._c(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraElement(self.algebra, self.algebra.sub(self.coords, self._c(other)))

    def __rsub__(self, other):
        return AlgebraElement(self.algebra, self.algebra.sub(self._c(other), self.coords))

    def __mul__(self, other):
        return AlgebraElement(self.algebra, self.algebra.mul(self.coords, self._c(other)))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, self.algebra.mul(self._c(other), self.coords))

    def __pow__(self, n):
        return AlgebraElement(self.algebra, self.algebra.power(self.coords, n))

    def __neg__(self):
        F = self.algebra.field
        return AlgebraElement(self.algebra, tuple(F.neg(a) for a in self.coords))

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra == other.algebra and self.coords == other.coords
        return self.coords == self._c(other)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        F = self.algebra.field
        return f"AlgebraElement({[F.format(c) for c in self.coords]})"


# -- constructors -------------------------------------------------------------

def from_table(field: Field, table, unit, basis=(), grading=None, action=None) -> StructureAlgebra:
    """Build from a dense table: ``table[i][j]`` is the coordinate vector of b_i b_j."""
    n = len(table)
    structure = []
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(table[i][j]):
                c = _norm(field, c)
                if c != field.zero:
                    structure.append((i, j, k, c))
    return StructureAlgebra(field, n, tuple(structure), unit, tuple(basis), grading, action)


def zero_algebra(field: Field) -> StructureAlgebra:
    return StructureAlgebra(field, 0, (), ())


def base_field(field: Field) -> StructureAlgebra:
    return StructureAlgebra(field, 1, ((0, 0, 0, field.one),), (field.one,), ("1",))


def split_algebra(field: Field, n: int) -> StructureAlgebra:
    """k^n with orthogonal idempotent basis."""
    return StructureAlgebra(field, n, tuple((i, i, i, field.one) for i in range(n)),
                            (field.one,) * n, tuple(f"e{i}" for i in range(n)))


def monogenic(field: Field, f: Sequence) -> StructureAlgebra:
    """k[x]/(f) in the basis 1, x, ..., x^(d-1); f need not be monic."""
    from ..exactcore.poly import p_monic, trim

    f = p_monic(field, trim(field, [field.parse(c) for c in f]))
    d = len(f) - 1
    if d < 0:
        raise UsageError("k[x]/(0) is infinite-dimensional")
    F = field
    # reduction of x^m for m < 2d - 1
    powers = []
    for m in range(max(2 * d - 1, 0)):
        if m < d:
            powers.append(tuple(F.one if i == m else F.zero for i in range(d)))
        else:
            prev = powers[m - 1]
            top = prev[d - 1]
            shifted = (F.zero,) + prev[:d - 1]
            powers.append(tuple(F.sub(s, F.mul(top, f[i])) for i, s in enumerate(shifted)))
    structure = []
    for i in range(d):
        for j in range(d):
            for k, c in enumerate(powers[i + j]):
                if c != F.zero:
                    structure.append((i, j, k, c))
    labels = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(d))
    unit = tuple(F.one if i == 0 else F.zero for i in range(d))
    return StructureAlgebra(field, d, tuple(structure), unit, labels)


def group_algebra(field: Field, group) -> StructureAlgebra:
    """k[G] with convolution product, basis ordered like ``group.elements``."""
    elems = group.elements
    index = {g: i for i, g in enumerate(elems)}
    structure = tuple((i, j, index[group.mul(g, h)], field.one)
                      for i, g in enumerate(elems) for j, h in enumerate(elems))
    unit = tuple(field.one if g == group.identity else field.zero for g in elems)
    return StructureAlgebra(field, len(elems), structure, unit, tuple(f"g{i}" for i in range(len(elems))))


def exterior_algebra(field: Field, r: int) -> StructureAlgebra:
    """Lambda(theta_1..theta_r) with odd generators; basis = subsets."""
    subsets = [s for m in range(r + 1) for s in _subsets(r, m)]
    index = {s: i for i, s in enumerate(subsets)}
    structure = []
    for i, s in enumerate(subsets):
        for j, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            merged = s + t
            inversions = sum(1 for a in range(len(merged)) for b in range(a + 1, len(merged))
                             if merged[a] > merged[b])
            c = field.one if inversions % 2 == 0 else field.neg(field.one)
            structure.append((i, j, index[tuple(sorted(merged))], c))
    unit = tuple(field.one if not s else field.zero for s in subsets)
    labels = tuple("1" if not s else "".join(f"t{a}" for a in s) for s in subsets)
    grading = tuple(len(s) % 2 for s in subsets)
    return StructureAlgebra(field, len(subsets), tuple(structure), unit, labels, grading)


def _subsets(r, m):
    from itertools import combinations

    return [tuple(c) for c in combinations(range(r), m)]


def tensor_product(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    """a (x) b over the common field, with Koszul signs when graded."""
    if a.field != b.field:
        raise UsageError(f"tensor product of algebras over {a.field} and {b.field}")
    F = a.field
    nb = b.dim
    graded = a.grading is not None or b.grading is not None
    structure = []
    for i, j, k, c in a.structure:
        for i2, j2, k2, d in b.structure:
            v = F.mul(c, d)
            if graded and b.parity(i2) and a.parity(j):
                v = F.neg(v)
            structure.append((i * nb + i2, j * nb + j2, k * nb + k2, v))
    unit = tuple(F.mul(x, y) for x in a.unit for y in b.unit)
    basis = tuple(f"{s}(x){t}" for s in a.basis for t in b.basis)
    grading = None
    if graded:
        grading = tuple((a.parity(i) + b.parity(j)) % 2 for i in range(a.dim) for j in range(nb))
    action = None
    if a.action is not None and b.action is not None and a.action.group == b.action.group:
        action = GroupAction(a.action.group, tuple(_kron(F, m1, m2) for m1, m2 in
                                                   zip(a.action.matrices, b.action.matrices)))
    return StructureAlgebra(F, a.dim * nb, tuple(structure), unit, basis, grading, action)


def _kron(F, A, B):
    nb = len(B)
    n = len(A) * nb
    out = [[F.zero] * n for _ in range(n)]
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            if x != F.zero:
                for k, brow in enumerate(B):
                    for l, y in enumerate(brow):
                        if y != F.zero:
                            out[i * nb + k][j * nb + l] = F.mul(x, y)
    return tuple(tuple(r) for r in out)


def direct_product(*algebras: StructureAlgebra) -> StructureAlgebra:
    """Block-diagonal product; the unit is the concatenation of units."""
    if not algebras:
        raise UsageError("direct product of nothing")
    F = algebras[0].field
    if any(a.field != F for a in algebras):
        raise UsageError("direct product of algebras over different fields")
    structure = []
    unit = []
    basis = []
    grading = [] if any(a.grading is not None for a in algebras) else None
    off = 0
    for idx, a in enumerate(algebras):
        structure.extend((i + off, j + off, k + off, c) for i, j, k, c in a.structure)
        unit.extend(a.unit)
        basis.extend(f"{s}@{idx}" for s in a.basis)
        if grading is not None:
            grading.extend(a.parity(i) for i in range(a.dim))
        off += a.dim
    action = None
    acts = [a.action for a in algebras]
    if all(x is not None for x in acts) and len({x.group for x in acts}) == 1:
        mats = []
        for g in range(len(acts[0].matrices)):
            M = [[F.zero] * off for _ in range(off)]
            o = 0
            for a in algebras:
                for i, row in enumerate(a.action.matrices[g]):
                    for j, x in enumerate(row):
                        M[o + i][o + j] = x
                o += a.dim
            mats.append(M)
        action = GroupAction(acts[0].group, tuple(mats))
    return StructureAlgebra(F, off, tuple(structure), tuple(unit), tuple(basis),
                            tuple(grading) if grading is not None else None, action)


def base_change(a: StructureAlgebra, field: Field) -> StructureAlgebra:
    """Extend scalars from a prime field to a field of the same characteristic."""
    if a.field == field:
        return a
    if a.field.kind != "prime" or field.characteristic != a.field.p:
        raise UsageError(f"cannot base change from {a.field} to {field}")
    conv = field.from_int
    structure = tuple((i, j, k, conv(c)) for i, j, k, c in a.structure)
    action = None
    if a.action is not None:
        action = GroupAction(a.action.group, tuple(tuple(tuple(conv(x) for x in r) for r in m)
                                                   for m in a.action.matrices))
    return StructureAlgebra(field, a.dim, structure, tuple(conv(u) for u in a.unit), a.basis,
                            a.grading, action)


def change_basis(a: StructureAlgebra, P) -> StructureAlgebra:
    """Re-express ``a`` in the basis given by the columns of the invertible matrix P."""
    F = a.field
    Pinv = linalg.inverse(F, P)
    if Pinv is None:
        raise UsageError("basis change matrix is singular")
    cols = [tuple(P[r][c] for r in range(a.dim)) for c in range(a.dim)]
    table = [[linalg.matvec(F, Pinv, a.mul(u, v)) for v in cols] for u in cols]
    unit = linalg.matvec(F, Pinv, a.unit)
    grading = a.grading
    action = None
    if a.action is not None:
        action = GroupAction(a.action.group, tuple(linalg.matmul(F, linalg.matmul(F, Pinv, m), P)
                                                   for m in a.action.matrices))
    return from_table(F, table, unit, (), grading, action)


# -- subalgebras and ideals ---------------------------------------------------

@dataclass(frozen=True)
class Embedded:
    """A subspace of ``ambient`` closed under product, realized as an algebra."""

    algebra: StructureAlgebra
    ambient: StructureAlgebra
    vectors: tuple  # RREF basis, in ambient coordinates
    pivots: tuple

    def coords(self, v):
        c = linalg.coordinates_in_rref_basis(self.vectors, self.pivots, v, self.ambient.field)
        if c is None:
            raise ConsistencyError("vector is not in the subalgebra")
        return c

    def lift(self, coords):
        F = self.ambient.field
        out = [F.zero] * self.ambient.dim
        for a, v in zip(coords, self.vectors):
            if a != F.zero:
                for i, x in enumerate(v):
                    if x != F.zero:
                        out[i] = F.add(out[i], F.mul(a, x))
        return tuple(out)


def _left_columns(a, x):
    """The products x b_j for every basis vector b_j."""
    F = a.field
    zero = F.zero
    out = [[zero] * a.dim for _ in range(a.dim)]
    for i, xi in enumerate(x):
        if xi == zero:
            continue
        for j, cell in enumerate(a.table[i]):
            col = out[j]
            for k, c in cell:
                col[k] = F.add(col[k], F.mul(xi, c))
    return out


def _combine(F, n, cols, v):
    zero = F.zero
    out = [zero] * n
    for vj, col in zip(v, cols):
        if vj == zero:
            continue
        for k, c in enumerate(col):
            if c != zero:
                out[k] = F.add(out[k], F.mul(vj, c))
    return tuple(out)


def subspace_algebra(a: StructureAlgebra, vectors, unit) -> Embedded:
    """Realize the span of ``vectors`` as an algebra with the given unit.

    Raises ``ConsistencyError`` if the span is not closed under products or
    ``unit`` is not a unit for it.
    """
    F = a.field
    basis, pivots = linalg.span_basis(F, [tuple(v) for v in vectors], a.dim)
    m = len(basis)
    emb = Embedded(None, a, tuple(basis), tuple(pivots))
    cols = [_left_columns(a, u) for u in basis]
    table = [[emb.coords(_combine(F, a.dim, lu, v)) for v in basis] for lu in cols]
    unit_c = emb.coords(unit) if m else ()
    lunit = _left_columns(a, unit)
    for u in basis:
        if _combine(F, a.dim, lunit, u) != tuple(u):
            raise ConsistencyError("given unit does not act as identity on the subspace")
    grading = None
    if a.grading is not None:
        grading = []
        for v in basis:
            par = {a.parity(i) for i, x in enumerate(v) if x != F.zero}
            if len(par) != 1:
                raise ConsistencyError("subspace is not spanned by homogeneous vectors")
            grading.append(par.pop())
    alg = from_table(F, table, unit_c, (), grading)
    return Embedded(alg, a, tuple(basis), tuple(pivots))


def ideal_algebra(a: StructureAlgebra, e) -> Embedded:
    """``e a`` for an idempotent e, an algebra with unit e."""
    return subspace_algebra(a, [a.mul(e, a.basis_vector(i)) for i in range(a.dim)], e)


# -- validation -----------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    failures: list

    def to_json(self):
        return {"valid": self.ok, "failures": self.failures}


def _graded_comm_failures(a):
    F = a.field
    out = []
    for i in range(a.dim):
        for j in range(i, a.dim):
            lhs = a.basis_product(i, j)
            rhs = a.basis_product(j, i)
            if a.parity(i) and a.parity(j):
                rhs = tuple(F.neg(x) for x in rhs)
            if lhs != rhs:
                out.append([i, j])
    return out


def validate(a: StructureAlgebra, *, check_action: bool = True) -> ValidationReport:
    """Check unit laws, associativity, (graded) commutativity, grading, action."""
    F = a.field
    failures = []
    n = a.dim
    u = a.unit
    for i in range(n):
        b = a.basis_vector(i)
        if a.mul(u, b) != b or a.mul(b, u) != b:
            failures.append({"axiom": "unit", "indices": [i]})
    prods = [[a.basis_product(i, j) for j in range(n)] for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        lhs = a.mul(prods[i][j], a.basis_vector(k))
        rhs = a.mul(a.basis_vector(i), prods[j][k])
        if lhs != rhs:
            failures.append({"axiom": "associativity", "indices": [i, j, k]})
    if a.grading is not None:
        for i in range(n):
            for j in range(n):
                par = (a.parity(i) + a.parity(j)) % 2
                if any(c != F.zero and a.parity(k) != par for k, c in enumerate(prods[i][j])):
                    failures.append({"axiom": "grading", "indices": [i, j]})
        if any(c != F.zero and a.parity(k) for k, c in enumerate(u)):
            failures.append({"axiom": "grading", "indices": ["unit"]})
        failures.extend({"axiom": "graded-commutativity", "indices": ij}
                        for ij in _graded_comm_failures(a))
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if prods[i][j] != prods[j][i]:
                    failures.append({"axiom": "commutativity", "indices": [i, j]})
    if a.action is not None and check_action:
        failures.extend(_action_failures(a))
    return ValidationReport(not failures, failures)


def _action_failures(a):
    F = a.field
    out = []
    act = a.action
    if len(act.matrices) != len(act.group.generators):
        return [{"axiom": "action", "indices": ["generator count"]}]
    n = a.dim
    for g, M in enumerate(act.matrices):
        if linalg.matvec(F, M, a.unit) != a.unit:
            out.append({"axiom": "action-unit", "indices": [g]})
        if linalg.rank(F, M, n) != n:
            out.append({"axiom": "action-invertible", "indices": [g]})
        cols = [tuple(M[r][c] for r in range(n)) for c in range(n)]
        for i in range(n):
            for j in range(n):
                if linalg.matvec(F, M, a.basis_product(i, j)) != a.mul(cols[i], cols[j]):
                    out.append({"axiom": "action-multiplicative", "indices": [g, i, j]})
    bad = act.relation_failure()
    if bad is not None:
        out.append({"axiom": "action-relations", "indices": [str(bad[0]), bad[1]]})
    return out


def require_commutative(a: StructureAlgebra, what: str):
    if not a.is_commutative():
        raise UsageError(f"{what} requires a commutative algebra")


# -- modules --------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraModule:
    """A finite-dimensional module: ``matrices[i]`` is the action of b_i."""

    algebra: StructureAlgebra
    dim: int
    matrices: tuple

    def act(self, x, m):
        F = self.algebra.field
        out = [F.zero] * self.dim
        for xi, M in zip(x, self.matrices):
            if xi != F.zero:
                v = linalg.matvec(F, M, m)
                out = [F.add(o, F.mul(xi, w)) for o, w in zip(out, v)]
        return tuple(out)

    def validate(self) -> list:
        a = self.algebra
        F = a.field
        fails = []
        if len(self.matrices) != a.dim:
            return ["wrong number of action matrices"]
        for M in self.matrices:
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                return ["action matrix has the wrong size"]
        I = linalg.identity(F, self.dim)
        unit_M = _combo(F, a.unit, self.matrices, self.dim)
        if unit_M != I:
            fails.append("unit acts non-trivially")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = linalg.matmul(F, self.matrices[i], self.matrices[j])
                rhs = _combo(F, a.basis_product(i, j), self.matrices, self.dim)
                if lhs != rhs:
                    fails.append(f"action not multiplicative at ({i}, {j})")
        return fails


def _combo(F, coeffs, mats, n):
    out = [[F.zero] * n for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if c != F.zero:
            for r in range(n):
                for s in range(n):
                    if M[r][s] != F.zero:
                        out[r][s] = F.add(out[r][s], F.mul(c, M[r][s]))
    return out


def regular_module(a: StructureAlgebra) -> AlgebraModule:
    return AlgebraModule(a, a.dim, tuple(tuple(tuple(r) for r in a.left_matrix(a.basis_vector(i)))
                                         for i in range(a.dim)))


# -- quotients --------------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    """``ambient / I`` with basis the non-pivot coordinates of I's RREF basis."""

    algebra: StructureAlgebra
    ambient: StructureAlgebra
    rows: tuple
    pivots: tuple
    free: tuple

    def reduce(self, v):
        """Coordinates of the class of v."""
        F = self.ambient.field
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            s = w[c]
            if s != F.zero:
                for j in self.free:
                    if row[j] != F.zero:
                        w[j] = F.sub(w[j], F.mul(s, row[j]))
        return tuple(w[j] for j in self.free)

    def lift(self, coords):
        F = self.ambient.field
        out = [F.zero] * self.ambient.dim
        for j, c in zip(self.free, coords):
            out[j] = c
        return tuple(out)


def quotient_algebra(a: StructureAlgebra, vectors, *, check_ideal: bool = True) -> Quotient:
    """Quotient of a commutative algebra by the span of ``vectors``.

    The span must be an ideal; with ``check_ideal`` this is asserted.
    """
    F = a.field
    rows, pivots = linalg.span_basis(F, [tuple(v) for v in vectors], a.dim)
    pivset = set(pivots)
    free = tuple(j for j in range(a.dim) if j not in pivset)
    q = Quotient(None, a, tuple(rows), tuple(pivots), free)
    if check_ideal:
        zero = (F.zero,) * len(free)
        for r in rows:
            for i in range(a.dim):
                if q.reduce(a.mul(a.basis_vector(i), r)) != zero:
                    raise ConsistencyError("relation span is not an ideal; quotient product ill-defined")
    basis = [q.lift(tuple(F.one if s == t else F.zero for s in range(len(free))))
             for t in range(len(free))]
    table = [[q.reduce(a.mul(u, v)) for v in basis] for u in basis]
    alg = from_table(F, table, q.reduce(a.unit) if free else (), tuple(a.basis[j] for j in free))
    return Quotient(alg, a, q.rows, q.pivots, free)
