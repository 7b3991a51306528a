"""Permutation algebras k[X] in the stable module category of a finite group.

``A^G_X`` is k[X] with the pointwise product (x * x = x, x * x' = 0), unit
sum_x x and the permutation action.  Stable-category statements are checked
at the level of G-set decompositions: an orbit summand k[G/L] is projective
exactly when p does not divide |L|.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ConsistencyError, UsageError
from .exactcore import linalg
from .exactcore.fields import GF, Field
from .fdalg.algebra import GroupAction, StructureAlgebra, quotient_algebra, split_algebra, subspace_algebra
from .fdalg.separable import SeparabilityWitness, separability_idempotent
from .fdalg.tower import degree as tower_degree
from .grp import (PermGroup, Subgroup, compose, conjugacy_classes_of_subgroups, cycle_string,
                  double_coset_decomposition, invert, normalizer_and_weyl, np_closure, order_p_subgroups,
                  p_rank, quotient_group, rank_one_classification, subgroups_between, _require_prime)
from .gset import GSet, coset_gset, orbit_decomposition


# -- construction ---------------------------------------------------------------------

def _perm_matrix(F, perm):
    n = len(perm)
    M = [[F.zero] * n for _ in range(n)]
    for j, i in enumerate(perm):
        M[i][j] = F.one
    return tuple(tuple(r) for r in M)


@dataclass(frozen=True)
class PermutationAlgebraSpec:
    group: PermGroup
    gset: GSet
    field: Field

    def algebra(self) -> StructureAlgebra:
        return permutation_algebra(self.group, self.gset, self.field)


def permutation_algebra(G: PermGroup, X: GSet, field: Field) -> StructureAlgebra:
    """A^G_X with basis X, diagonal product, unit sum_x x and the permutation action."""
    if X.group != G:
        raise UsageError("G-set is over a different group")
    n = len(X)
    F = field
    structure = tuple((i, i, i, F.one) for i in range(n))
    action = GroupAction(G, tuple(_perm_matrix(F, perm) for perm in X.action))
    return StructureAlgebra(F, n, structure, (F.one,) * n, X.points, None, action)


def permutation_witness(a: StructureAlgebra) -> SeparabilityWitness:
    """e = sum_x x (x) x, verified and compared with the solver's unique solution."""
    F = a.field
    n = a.dim
    e = tuple(F.one if i // n == i % n else F.zero for i in range(n * n)) if n else ()
    w = SeparabilityWitness(a, e)
    fails = w.verify()
    if fails:
        raise ConsistencyError("; ".join(fails))
    solved = separability_idempotent(a)
    if solved is None or solved.e != e:
        raise ConsistencyError("solver disagrees with sum_x x (x) x")
    return w


# -- Tate cohomology ---------------------------------------------------------------------

@dataclass
class TateH0:
    dim: int
    invariant_dim: int
    norm_rank: int
    ring: StructureAlgebra | None = None

    def to_json(self):
        return {"dim": self.dim, "invariant_dim": self.invariant_dim, "norm_rank": self.norm_rank}


def tate_h0(G: PermGroup, matrices, field: Field, algebra: StructureAlgebra | None = None) -> TateH0:
    """Invariants modulo norms for the module given by generator matrices.

    With ``algebra`` (whose action is these matrices) the quotient ring is
    built as well.
    """
    if field.characteristic == 0:
        raise UsageError("Tate cohomology here needs a field of positive characteristic")
    F = field
    mats = [tuple(tuple(r) for r in M) for M in matrices]
    n = len(mats[0]) if mats else (algebra.dim if algebra is not None else 0)
    from .grp import extend_to_group

    ident = tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))
    images, bad = extend_to_group(G, mats, lambda A, B: tuple(tuple(r) for r in linalg.matmul(F, A, B)),
                                  ident)
    if bad is not None:
        raise UsageError("module matrices violate a group relation")
    norm = [[F.zero] * n for _ in range(n)]
    for M in images.values():
        for i in range(n):
            for j in range(n):
                if M[i][j] != F.zero:
                    norm[i][j] = F.add(norm[i][j], M[i][j])
    rows = []
    for M in mats:
        rows.extend([F.sub(M[i][j], F.one) if i == j else M[i][j] for j in range(n)] for i in range(n))
    inv = linalg.nullspace(F, rows, n) if rows else [tuple(ident[i]) for i in range(n)]
    norm_cols = [tuple(norm[i][j] for i in range(n)) for j in range(n)]
    norm_rank = linalg.rank(F, norm_cols, n) if n else 0
    dim = len(inv) - norm_rank
    ring = None
    if algebra is not None and n:
        sub = subspace_algebra(algebra, inv, algebra.unit)
        rel = [sub.coords(v) for v in norm_cols if any(x != F.zero for x in v)]
        ring = quotient_algebra(sub.algebra, rel).algebra
        if ring.dim != dim:
            raise ConsistencyError("Tate quotient ring has the wrong dimension")
    return TateH0(dim, len(inv), norm_rank, ring)


# -- stable degree -----------------------------------------------------------------------

def _as_gset(G, target):
    if isinstance(target, GSet):
        return target
    if isinstance(target, Subgroup):
        return coset_gset(G, target)
    raise UsageError("expected a subgroup or a G-set")


def stmod_degree_oracle(X: GSet, p: int) -> int:
    """Largest set of points whose stabilizers have a common subgroup of order divisible by p."""
    stabs = [X.stabilizer(i).elements for i in range(len(X))]
    n = len(stabs)
    best = 0

    def search(start, inter, size):
        nonlocal best
        if size > best:
            best = size
        for i in range(start, n):
            if size + (n - i) <= best:
                return
            nxt = stabs[i] if inter is None else inter & stabs[i]
            if len(nxt) % p == 0:
                search(i + 1, nxt, size + 1)

    search(0, None, 0)
    return best


@dataclass
class StmodReport:
    degree: int
    maximizing_Q: Subgroup | None
    fixed_points: list
    non_projective: list
    projective: list
    oracle_degree: int | None = None
    warnings: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "degree": self.degree,
            "maximizing_Q": cycle_string(self.maximizing_Q.generators[0]) if self.maximizing_Q else None,
            "fixed_points": list(self.fixed_points),
            "projective_orbits": [len(o) for o in self.projective],
            "non_projective_orbits": [len(o) for o in self.non_projective],
            "oracle_degree": self.oracle_degree,
            "warnings": list(self.warnings),
        }


def stmod_degree(G: PermGroup, target, p: int, *, oracle_cutoff: int = 16) -> StmodReport:
    """Stable degree of A^G_X: the maximum over order-p subgroups Q of |X^Q|."""
    _require_prime(p)
    X = _as_gset(G, target)
    nonproj, proj = strip_projective_summands(G, X, p)
    if G.order % p:
        return StmodReport(0, None, [], nonproj, proj, 0 if len(X) <= oracle_cutoff else None,
                           [f"p = {p} does not divide |G| = {G.order}; the stable category is trivial"])
    best, bestQ, bestpts = -1, None, []
    for Q in order_p_subgroups(G, p):
        g = Q.generators[0]
        pts = X.fixed_by(g)
        if len(pts) > best:
            best, bestQ, bestpts = len(pts), Q, pts
    rep = StmodReport(best, bestQ, bestpts, nonproj, proj)
    if len(X) <= oracle_cutoff:
        rep.oracle_degree = stmod_degree_oracle(X, p)
        if rep.oracle_degree != best:
            raise ConsistencyError(f"fixed-point degree {best} != oracle degree {rep.oracle_degree}")
    return rep


def strip_projective_summands(G: PermGroup, X: GSet, p: int):
    """Split orbits into (non-projective, projective) by whether p divides the stabilizer order."""
    nonproj, proj = [], []
    for orb, stab in orbit_decomposition(X):
        (nonproj if stab.order % p == 0 else proj).append(orb)
    return nonproj, proj


# -- rank one ---------------------------------------------------------------------------

def _rank_one_setup(G: PermGroup, p: int):
    _require_prime(p)
    r = p_rank(G, p)
    if r != 1:
        raise UsageError(f"p-rank of the group at p = {p} is {r}, not 1")
    P = order_p_subgroups(G, p)[0]
    wd = normalizer_and_weyl(G, P)
    return P, wd


def right_action_matrices(G: PermGroup, P: Subgroup, reps, field: Field):
    """Matrices of [y]_P -> [y n]_P on k[G/P] for each n in ``reps``."""
    X = coset_gset(G, P)
    cosets = P.left_cosets()
    where = {g: i for i, c in enumerate(cosets) for g in c}
    out = []
    for n in reps:
        perm = tuple(where[compose(c[0], n)] for c in cosets)
        out.append(_perm_matrix(field, perm))
    return X, cosets, where, out


@dataclass
class GaloisVerificationReport:
    group: str
    p: int
    P: Subgroup
    N: Subgroup
    W: PermGroup
    sylow_kind: str
    h: list
    tau: list
    ledger: list
    degree: int
    tate_dim: int
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self):
        return {
            "group": self.group,
            "p": self.p,
            "P": [cycle_string(g) for g in self.P.generators],
            "N": self.N.order,
            "W_order": self.W.order,
            "sylow": self.sylow_kind,
            "degree": self.degree,
            "tate_h0_dim": self.tate_dim,
            "double_cosets": self.ledger,
            "checks": dict(sorted(self.checks.items())),
            "h_equals_tau": self.checks["h_equals_tau"],
            "passed": self.ok,
        }


def verify_rank_one_galois(G: PermGroup, p: int, field: Field | None = None, *,
                           oracle_cutoff: int = 16) -> GaloisVerificationReport:
    """Machine check that A^G_P is a W-Galois extension in the stable category."""
    F = field or GF(p)
    if F.characteristic != p:
        raise UsageError("field characteristic must equal p")
    P, wd = _rank_one_setup(G, p)
    kind = rank_one_classification(G, p).kind
    W0 = wd.coset_reps
    X, cosets, where, R = right_action_matrices(G, P, W0, F)
    A = permutation_algebra(G, X, F)
    m = A.dim
    reps = [c[0] for c in cosets]
    Pset = P.elements

    # R_n are algebra automorphisms commuting with the G-action
    for M in R:
        for s in A.action.matrices:
            if linalg.matmul(F, M, s) != linalg.matmul(F, s, M):
                raise ConsistencyError("right N-action does not commute with the G-action")
        cols = [tuple(M[r][j] for r in range(m)) for j in range(m)]
        if any(A.mul(cols[i], cols[j]) != (cols[i] if i == j else A.zero_vector)
               for i in range(m) for j in range(m)):
            raise ConsistencyError("right N-action is not multiplicative")

    # h from the algebra: pr_g h(a1 (x) a2) = a1 * R_g(a2); tau from y^-1 x g^-1 in P
    h = [[F.zero] * (m * m) for _ in range(len(W0) * m)]
    tau = [[F.zero] * (m * m) for _ in range(len(W0) * m)]
    for w, (n, M) in enumerate(zip(W0, R)):
        ninv = invert(n)
        for x in range(m):
            bx = A.basis_vector(x)
            for y in range(m):
                ry = tuple(M[r][y] for r in range(m))
                prod = A.mul(bx, ry)
                for z, c in enumerate(prod):
                    if c != F.zero:
                        h[w * m + z][x * m + y] = c
                if compose(compose(invert(reps[y]), reps[x]), ninv) in Pset:
                    tau[w * m + x][x * m + y] = F.one
    h_eq_tau = h == tau

    # double-coset ledger: |W| orbits with stabilizer P, the rest free
    dc = double_coset_decomposition(G, P, P)
    ledger = [{"representative": cycle_string(c.representative), "intersection_order": c.intersection.order,
               "orbit_size": c.orbit_size} for c in dc.cosets]
    non_free = [c for c in dc.cosets if c.intersection.order == P.order]
    free = [c for c in dc.cosets if c.intersection.order == 1]
    ledger_ok = len(non_free) == wd.weyl.order and len(non_free) + len(free) == len(dc.cosets)

    # h vanishes on the free part and is invertible on the W part
    nonfree_cols = [x * m + y for x in range(m) for y in range(m)
                    if compose(invert(reps[x]), reps[y]) in wd.normalizer.elements]
    nf = set(nonfree_cols)
    kills_free = all(h[r][c] == F.zero for r in range(len(h)) for c in range(m * m) if c not in nf)
    sub = [[h[r][c] for c in nonfree_cols] for r in range(len(h))]
    square = len(nonfree_cols) == len(h)
    invertible = square and linalg.rank(F, sub, len(nonfree_cols)) == len(h)

    deg = stmod_degree(G, P, p, oracle_cutoff=oracle_cutoff).degree
    th = tate_h0(G, A.action.matrices, F, A)
    tate_ok = th.dim == 1 and th.ring is not None and th.ring.dim == 1

    checks = {
        "h_equals_tau": h_eq_tau,
        "double_coset_ledger": ledger_ok,
        "h_kills_free_part": kills_free,
        "h_invertible_on_weyl_part": invertible,
        "degree_equals_W": deg == wd.weyl.order,
        "tate_h0_is_k": tate_ok,
    }
    name = G.name or f"group of order {G.order}"
    return GaloisVerificationReport(name, p, P, wd.normalizer, wd.weyl, kind, h, tau, ledger, deg,
                                    th.dim, checks)


@dataclass
class CoverEntry:
    V: Subgroup
    U_order: int        # |V/P|
    index: int          # [G:V] = dim A^G_V
    W_set: int          # |W/(V/P)|
    conjugacy_class: int

    def to_json(self):
        return {"V_order": self.V.order, "index": self.index, "W_set": self.W_set,
                "U_order": self.U_order, "class": self.conjugacy_class}


@dataclass
class RankOneClassificationReport:
    p: int
    P: Subgroup
    N: Subgroup
    W: PermGroup
    covers: list
    class_count: int

    def to_json(self):
        return {"p": self.p, "P_order": self.P.order, "N_order": self.N.order, "W_order": self.W.order,
                "covers": [c.to_json() for c in self.covers], "cover_count": len(self.covers),
                "conjugacy_classes": self.class_count}


def classify_rank_one(G: PermGroup, p: int, field: Field | None = None) -> RankOneClassificationReport:
    """Dictionary entries V (P <= V <= N) -> A^G_V, the fixed points of A^G_P under V/P."""
    F = field or GF(p)
    P, wd = _rank_one_setup(G, p)
    pairs = subgroups_between(G, P, wd.normalizer)
    Wsubs = [U for U, _ in pairs]
    classes = conjugacy_classes_of_subgroups(wd.weyl, Wsubs)
    cls_of = {}
    for ci, cls in enumerate(classes):
        for U in cls:
            cls_of[U.elements] = ci
    X = coset_gset(G, P)
    A = permutation_algebra(G, X, F)
    entries = []
    for U, V in pairs:
        _, _, _, R = right_action_matrices(G, P, V.generators, F)
        rows = []
        for M in R:
            rows.extend([F.sub(M[i][j], F.one) if i == j else M[i][j] for j in range(A.dim)]
                        for i in range(A.dim))
        fixed = linalg.nullspace(F, rows, A.dim) if rows else [A.basis_vector(i) for i in range(A.dim)]
        sub = subspace_algebra(A, fixed, A.unit)
        index = G.order // V.order
        if sub.algebra.dim != index:
            raise ConsistencyError(f"fixed points under V/P have dimension {sub.algebra.dim}, expected {index}")
        entries.append(CoverEntry(V, U.order, index, wd.weyl.order // U.order, cls_of[U.elements]))
    entries.sort(key=lambda e: (e.V.order, e.conjugacy_class, sorted(e.V.elements)))
    return RankOneClassificationReport(p, P, wd.normalizer, wd.weyl, entries, len(classes))


# -- Mod_G ---------------------------------------------------------------------------------

@dataclass
class ModGData:
    group: PermGroup
    p: int
    Np: Subgroup
    quotient: PermGroup
    coset_reps: tuple
    coset_index: dict

    def accepts(self, X: GSet) -> bool:
        """Does N_p(G) act trivially on X?"""
        if X.group != self.group:
            raise UsageError("G-set is over a different group")
        ident = tuple(range(len(X)))
        return all(X.element_permutation(g) == ident for g in self.Np.generators)

    def project(self, g) -> int:
        return self.coset_index[tuple(g)]

    def modG_degree(self, X: GSet) -> int:
        """Degree of the cover A_X = k^X, computed by its splitting tower."""
        if not self.accepts(X):
            raise UsageError("N_p(G) acts nontrivially; not a cover of Mod_G")
        return tower_degree(split_algebra(GF(self.p), len(X)))

    def to_json(self):
        from .grp import is_cyclic

        return {"p": self.p, "Np_order": self.Np.order, "Np": [cycle_string(g) for g in self.Np.generators],
                "quotient_order": self.quotient.order,
                "quotient_cyclic": is_cyclic(self.quotient, self.quotient.whole),
                "quotient_abelian": self.quotient.is_abelian()}


def modG_galois_data(G: PermGroup, p: int) -> ModGData:
    Np = np_closure(G, p)
    Q, reps, index = quotient_group(G, G.whole, Np)
    return ModGData(G, p, Np, Q, reps, index)


def inflate_gset(data: ModGData, Y: GSet) -> GSet:
    """A G/N_p(G)-set viewed as a G-set."""
    if Y.group != data.quotient:
        raise UsageError("G-set is not over the quotient group")
    acts = [Y.element_permutation(_quot_elem(data, s)) for s in data.group.generators]
    return GSet(data.group, Y.points, acts)


def _quot_elem(data: ModGData, g):
    # the quotient acts on cosets gN by left multiplication
    reps = data.coset_reps
    return tuple(data.coset_index[compose(g, r)] for r in reps)
