"""Galois extensions of the base field with a finite group action."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UsageError
from ..exactcore import linalg
from .algebra import Embedded, GroupAction, StructureAlgebra, monogenic, subspace_algebra, validate


@dataclass
class GaloisReport:
    invariants_are_base: bool
    shear_invertible: bool
    nonzero: bool
    invariant_dim: int

    @property
    def ok(self) -> bool:
        return self.invariants_are_base and self.shear_invertible and self.nonzero

    def failed(self) -> list:
        out = []
        if not self.invariants_are_base:
            out.append("invariants")
        if not self.shear_invertible:
            out.append("shear map")
        if not self.nonzero:
            out.append("zero algebra")
        return out

    def to_json(self):
        return {"galois": self.ok, "invariants_are_base": self.invariants_are_base,
                "invariant_dim": self.invariant_dim, "shear_invertible": self.shear_invertible,
                "nonzero": self.nonzero, "failed": self.failed()}


def _require_action(a: StructureAlgebra):
    if a.action is None:
        raise UsageError("algebra carries no group action")
    rep = validate(a)
    bad = [f for f in rep.failures if f["axiom"].startswith("action")]
    if bad:
        raise UsageError(f"invalid group action: {bad[0]['axiom']} at {bad[0]['indices']}")


def invariant_vectors(a: StructureAlgebra, generators=None):
    """Basis of the vectors fixed by the given group elements (default: the group generators)."""
    F = a.field
    n = a.dim
    act = a.action
    if generators is None:
        mats = act.matrices
    else:
        mats = [act.element_matrix(g) for g in generators]
    rows = []
    for M in mats:
        for i in range(n):
            rows.append([F.sub(M[i][j], F.one) if i == j else M[i][j] for j in range(n)])
    if not rows:
        return [a.basis_vector(i) for i in range(n)]
    return linalg.span_basis(F, linalg.nullspace(F, rows, n), n)[0]


def shear_matrix(a: StructureAlgebra):
    """Matrix of A (x) A -> prod_G A, a1 (x) a2 -> (a1 g(a2))_g; blocks ordered like the group elements."""
    F = a.field
    n = a.dim
    group = a.action.group
    cols = []
    images = {g: a.action.element_matrix(g) for g in group.elements}
    for i in range(n):
        bi = a.basis_vector(i)
        for j in range(n):
            col = []
            for g in group.elements:
                M = images[g]
                col.extend(a.mul(bi, tuple(M[r][j] for r in range(n))))
            cols.append(col)
    m = n * len(group.elements)
    return [[cols[c][r] for c in range(n * n)] for r in range(m)]


def galois_check(a: StructureAlgebra) -> GaloisReport:
    _require_action(a)
    F = a.field
    n = a.dim
    inv = invariant_vectors(a)
    unit_fixed = n > 0 and linalg.coordinates_in_rref_basis(inv, linalg.span_basis(F, inv, n)[1],
                                                            a.unit, F) is not None
    invariants_ok = len(inv) == 1 and unit_fixed
    order = len(a.action.group.elements)
    if n == 0:
        shear_ok = False
    elif n != order:
        shear_ok = False
    else:
        H = shear_matrix(a)
        shear_ok = linalg.rank(F, H, n * n) == n * n
    return GaloisReport(invariants_ok, shear_ok, n > 0, len(inv))


def fixed_subalgebra(a: StructureAlgebra, k_sub) -> Embedded:
    """Strict fixed points of a subgroup, realized as a subalgebra."""
    _require_action(a)
    gens = list(k_sub.generators) if hasattr(k_sub, "generators") else list(k_sub)
    vecs = invariant_vectors(a, gens) if gens else [a.basis_vector(i) for i in range(a.dim)]
    return subspace_algebra(a, vecs, a.unit)


def frobenius_extension(p: int, modulus) -> StructureAlgebra:
    """F_p[x]/(f) for irreducible f of degree d, with Z/d acting by x -> x^p."""
    from ..exactcore.fields import GF
    from ..grp import PermGroup

    F = GF(p)
    a = monogenic(F, modulus)
    d = a.dim
    cols = [a.power(a.basis_vector(j), p) for j in range(d)]
    M = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    group = PermGroup(d, [tuple((i + 1) % d for i in range(d))], name=f"Z{d}")
    return a.with_action(GroupAction(group, (M,)))
