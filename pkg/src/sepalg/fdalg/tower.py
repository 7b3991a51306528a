"""Relative tensor squares, the splitting tower, degrees and degree functions.

The tower is computed one connected block at a time.  If stage n-1 has a
block R whose children at stage n are C_1, ..., C_m, then

    A^[n] (x)_{A^[n-1]} A^[n]  restricted over R  =  prod_{j, j'} C_j (x)_R C_j'

and the diagonal factor of C_j (x)_R C_j is cut off by the relative
separability idempotent.  Every block of the next stage therefore lives in a
single piece C_j (x)_R C_j' and has parent C_j.  Pieces only depend on the
data (R, C_1..C_m, inclusions), so identical parents are computed once; this
keeps k^8 (40320 blocks at the top) cheap.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

from ..errors import CapacityError, ConsistencyError, NotSeparable, UsageError
from ..exactcore import linalg
from .algebra import (Embedded, Quotient, StructureAlgebra, base_field, direct_product, from_table, ideal_algebra,
                      quotient_algebra, require_commutative, tensor_product, zero_algebra)
from .idempotents import primitive_idempotents
from .separable import etale_via_trace_form


def _col(M, j):
    return tuple(row[j] for row in M)


def _apply(F, M, v):
    return linalg.matvec(F, M, v) if M else ()


def _kron(F, x, y):
    return tuple(F.mul(s, t) for s in x for t in y)


@dataclass(frozen=True)
class RelativeAlgebra:
    """B as an algebra over R through ``structure_map`` (column r = image of base basis r)."""

    base: StructureAlgebra
    total: StructureAlgebra
    structure_map: tuple

    def __post_init__(self):
        R, B = self.base, self.total
        M = tuple(tuple(r) for r in self.structure_map)
        object.__setattr__(self, "structure_map", M)
        if len(M) != B.dim or any(len(r) != R.dim for r in M):
            raise UsageError("structure map has the wrong shape")
        if R.field != B.field:
            raise UsageError("base and total algebra live over different fields")
        require_commutative(R, "RelativeAlgebra base")
        if self.image(R.unit) != B.unit:
            raise UsageError("structure map is not unital")
        for i in range(R.dim):
            for j in range(i, R.dim):
                lhs = self.image(R.basis_product(i, j))
                rhs = B.mul(self.image(R.basis_vector(i)), self.image(R.basis_vector(j)))
                if lhs != rhs:
                    raise UsageError(f"structure map is not multiplicative at ({i}, {j})")

    def image(self, r):
        F = self.base.field
        if not self.structure_map:
            return ()
        return linalg.matvec(F, self.structure_map, r)

    @classmethod
    def over_field(cls, a: StructureAlgebra):
        return cls(base_field(a.field), a, tuple((u,) for u in a.unit))


def _relative_tensor(R, C, phi, C2, phi2) -> Quotient:
    """C (x)_R C2 as a quotient of C (x)_k C2."""
    F = C.field
    V = tensor_product(C, C2)
    rels = []
    for r in range(R.dim):
        u = _apply(F, phi, R.basis_vector(r))
        u2 = _apply(F, phi2, R.basis_vector(r))
        for x in range(C.dim):
            bx = C.basis_vector(x)
            ux = C.mul(u, bx)
            for y in range(C2.dim):
                by = C2.basis_vector(y)
                v = V.sub(_kron(F, ux, by), _kron(F, bx, C2.mul(u2, by)))
                if not V.is_zero(v):
                    rels.append(v)
    return quotient_algebra(V, rels)


class FreeTensor:
    """C (x)_R C2 for a field R, on the basis b_i (x) y_t with y_t basis vectors of C2 over R.

    Quacks like ``Quotient``: ``free`` lists the pure tensors b_i (x) b_j used as
    basis (as i * dim C2 + j) and ``reduce`` maps C (x)_k C2 coordinates to T.
    """

    def __init__(self, R, C, phi, C2, phi2):
        F = C.field
        self.ambient_dims = (C.dim, C2.dim)
        n, n2 = C.dim, C2.dim
        rimg = [_apply(F, phi2, R.basis_vector(r)) for r in range(R.dim)]
        # greedy R-basis of C2 among its k-basis vectors
        chosen, span = [], []
        for j in range(n2):
            bj = C2.basis_vector(j)
            cand = span + [C2.mul(u, bj) for u in rimg]
            if linalg.rank(F, cand, n2) > len(span):
                chosen.append(j)
                span = cand
        if len(span) != n2 or linalg.rank(F, span, n2) != n2:
            raise ConsistencyError("relative tensor: C2 is not free over the base block")
        m = len(chosen)
        # columns phi2(b_r) y_t, indexed r * m + t
        cols = [C2.mul(rimg[r], C2.basis_vector(chosen[t])) for r in range(R.dim) for t in range(m)]
        Minv = linalg.inverse(F, [[cols[c][k] for c in range(n2)] for k in range(n2)])
        if Minv is None:
            raise ConsistencyError("relative tensor: R-basis of C2 is degenerate")
        self._Minv = Minv
        self._R, self._C, self._C2, self._phi, self._m = R, C, C2, phi, m
        self.free = tuple(i * n2 + chosen[t] for i in range(n) for t in range(m))
        # r_{j,t}: R-coordinates of b_j, then red[i][j] = sum_t (b_i phi(r_{j,t})) (x) y_t
        self._coef = [self._rcoords(C2.basis_vector(j)) for j in range(n2)]
        self._red = [[self._pure_basis(i, self._coef[j]) for j in range(n2)] for i in range(n)]
        t_dim = n * m
        # y_s y_t = sum_u phi2(r_stu) y_u, so (b_i (x) y_s)(b_k (x) y_t) = sum_u b_i b_k phi(r_stu) (x) y_u;
        # precompute P[l][s][t] = [b_l phi(r_stu)]_u and combine along b_i b_k = sum_l w_l b_l
        psi = [[[_apply(F, phi, r) for r in self._rcoords(C2.mul(C2.basis_vector(chosen[s_]),
                                                                  C2.basis_vector(chosen[t_])))]
                for t_ in range(m)] for s_ in range(m)]
        P = [[[[C.mul(C.basis_vector(l), psi[s_][t_][u]) for u in range(m)] for t_ in range(m)]
              for s_ in range(m)] for l in range(n)]
        zero = F.zero
        table = [[None] * t_dim for _ in range(t_dim)]
        for a in range(t_dim):
            i, s_ = divmod(a, m)
            for b in range(a, t_dim):
                k, t_ = divmod(b, m)
                out = [zero] * t_dim
                for l, w in C.table[i][k]:
                    for u in range(m):
                        for pos, c in enumerate(P[l][s_][t_][u]):
                            if c != zero:
                                idx = pos * m + u
                                out[idx] = F.add(out[idx], F.mul(w, c))
                table[a][b] = table[b][a] = tuple(out)
        unit = self._pure(C.unit, self._rcoords(C2.unit))
        self.algebra = from_table(F, table, unit)
        self.ambient = None

    def _rcoords(self, z):
        """R-coordinates (one R-vector per t) of z in C2."""
        F = self._C.field
        k = linalg.matvec(F, self._Minv, z)
        R, m = self._R, self._m
        return [tuple(k[r * m + t] for r in range(R.dim)) for t in range(m)]

    def _pure(self, x, rco):
        """x (x) z in T coordinates, where z has R-coordinates ``rco``."""
        C, F, m = self._C, self._C.field, self._m
        out = [F.zero] * (C.dim * m)
        for t, r in enumerate(rco):
            if all(c == F.zero for c in r):
                continue
            v = C.mul(x, _apply(F, self._phi, r))
            for i, c in enumerate(v):
                if c != F.zero:
                    out[i * m + t] = F.add(out[i * m + t], c)
        return tuple(out)

    def _pure_basis(self, i, rco):
        return self._pure(self._C.basis_vector(i), rco)

    def reduce(self, v):
        C, F, m = self._C, self._C.field, self._m
        n2 = self._C2.dim
        out = [F.zero] * (C.dim * m)
        for idx, c in enumerate(v):
            if c == F.zero:
                continue
            i, j = divmod(idx, n2)
            for pos, w in enumerate(self._red[i][j]):
                if w != F.zero:
                    out[pos] = F.add(out[pos], F.mul(c, w))
        return tuple(out)


def _mu_columns(q: Quotient, C):
    n = C.dim
    return [C.basis_product(c // n, c % n) for c in q.free]


def _relative_separability(q: Quotient, C):
    """The separability idempotent of C over R inside T = C (x)_R C."""
    F = C.field
    T = q.algebra
    t = T.dim
    n = C.dim
    mu = _mu_columns(q, C)
    rows = [[mu[c][k] for c in range(t)] for k in range(n)]
    rhs = list(C.unit)
    for x in range(n):
        bx = C.basis_vector(x)
        cols = []
        for c in q.free:
            i, j = divmod(c, n)
            v = tensor_diff(F, C, bx, i, j)
            cols.append(q.reduce(v))
        for k in range(t):
            rows.append([cols[c][k] for c in range(t)])
            rhs.append(F.zero)
    sol = linalg.solve(F, rows, rhs, t)
    if sol is None:
        raise NotSeparable("not separable over base")
    e, kernel = sol
    if kernel:
        raise ConsistencyError("relative separability idempotent is not unique")
    if T.mul(e, e) != e:
        raise ConsistencyError("relative separability idempotent is not idempotent")
    # B (x)_R B = B x A' with first projection mu: b -> e (b (x) 1) inverts mu on eT
    for x in range(n):
        bx = C.basis_vector(x)
        v = T.mul(e, q.reduce(_kron(F, bx, C.unit)))
        if _mu(F, mu, v, n) != bx:
            raise ConsistencyError("mu does not invert b -> e (b (x) 1)")
    if linalg.rank(F, [T.mul(e, T.basis_vector(c)) for c in range(t)], t) != n:
        raise ConsistencyError("diagonal factor e T is not isomorphic to B")
    return e


def tensor_diff(F, C, bx, i, j):
    """(x (x) 1 - 1 (x) x)(b_i (x) b_j) in C (x)_k C coordinates."""
    n = C.dim
    left = _kron(F, C.mul(bx, C.basis_vector(i)), C.basis_vector(j))
    right = _kron(F, C.basis_vector(i), C.mul(bx, C.basis_vector(j)))
    return tuple(F.sub(s, t) for s, t in zip(left, right)) if n else ()


def _mu(F, mu_cols, v, n):
    out = [F.zero] * n
    for c, coef in enumerate(v):
        if coef != F.zero:
            for k, y in enumerate(mu_cols[c]):
                if y != F.zero:
                    out[k] = F.add(out[k], F.mul(coef, y))
    return tuple(out)


# -- generic (unblocked) step -------------------------------------------------------

@dataclass(frozen=True)
class RelativeTensorSquare:
    algebra: StructureAlgebra
    quotient: Quotient
    left: tuple    # B -> T, x -> x (x) 1
    right: tuple   # B -> T, x -> 1 (x) x
    mu: tuple      # T -> B


def relative_tensor_square(b: RelativeAlgebra) -> RelativeTensorSquare:
    B = b.total
    F = B.field
    q = _relative_tensor(b.base, B, b.structure_map, B, b.structure_map)
    left_cols = [q.reduce(_kron(F, B.basis_vector(x), B.unit)) for x in range(B.dim)]
    right_cols = [q.reduce(_kron(F, B.unit, B.basis_vector(x))) for x in range(B.dim)]
    t = q.algebra.dim
    left = tuple(tuple(c[k] for c in left_cols) for k in range(t))
    right = tuple(tuple(c[k] for c in right_cols) for k in range(t))
    mu_cols = _mu_columns(q, B)
    mu = tuple(tuple(c[k] for c in mu_cols) for k in range(B.dim))
    return RelativeTensorSquare(q.algebra, q, left, right, mu)


@dataclass(frozen=True)
class SplittingStep:
    tensor: RelativeTensorSquare
    idempotent: tuple
    complement: Embedded
    next: RelativeAlgebra   # A' over B through x -> (1 - e)(x (x) 1)


def splitting_step(b: RelativeAlgebra) -> SplittingStep:
    """B (x)_R B = B x A'; returns A' = (1 - e)(B (x)_R B) over B."""
    B = b.total
    F = B.field
    ts = relative_tensor_square(b)
    T = ts.algebra
    e = _relative_separability(ts.quotient, B)
    f = T.sub(T.unit, e)
    comp = ideal_algebra(T, f)
    cols = [comp.coords(T.mul(f, _col(ts.left, x))) if comp.algebra.dim else ()
            for x in range(B.dim)]
    d = comp.algebra.dim
    M = tuple(tuple(c[k] for c in cols) for k in range(d))
    return SplittingStep(ts, e, comp, RelativeAlgebra(B, comp.algebra, M))


def unblocked_tower_dims(a: StructureAlgebra, max_steps: int | None = None) -> list[int]:
    """Dimensions of A^[1], A^[2], ... by iterating ``splitting_step`` directly."""
    cur = RelativeAlgebra.over_field(a)
    if not etale_via_trace_form(a):
        raise NotSeparable("not separable over base")
    dims = [a.dim]
    limit = a.dim + 1 if max_steps is None else max_steps
    while cur.total.dim:
        if len(dims) > limit:
            raise CapacityError(f"tower exceeds {limit} steps")
        cur = splitting_step(cur).next
        dims.append(cur.total.dim)
    return dims


# -- blockwise tower ------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    algebra: StructureAlgebra
    parent: int           # index into the previous stage
    inclusion: tuple      # parent block -> this block, column r = image of parent basis r
    root: int             # base component this block lies over


def _expand(R, children, seed):
    """Blocks of the next stage over one parent.

    ``children`` is a tuple of (C_j, inclusion R -> C_j).  Returns the list of
    (j, D, inclusion C_j -> D) and the total k-dimension of the tensor pieces.
    """
    out = []
    tensor_dim = 0
    for j, (C, phi) in enumerate(children):
        F = C.field
        for j2, (C2, phi2) in enumerate(children):
            q = FreeTensor(R, C, phi, C2, phi2)
            T = q.algebra
            tensor_dim += T.dim
            if T.dim == 0:
                continue
            if j == j2:
                # the diagonal factor e T is C itself; only (1 - e) T needs splitting
                e = _relative_separability(q, C)
                rest = T.sub(T.unit, e)
                if T.is_zero(rest):
                    continue
                comp = ideal_algebra(T, rest)
                kept = [comp.lift(eps) for eps in primitive_idempotents(comp.algebra, seed=seed).idempotents]
                total = T.zero_vector
                for eps in kept:
                    total = T.add(total, eps)
                if total != rest or any(not T.is_zero(T.mul(eps, e)) for eps in kept):
                    raise ConsistencyError("complement idempotents do not sum to 1 - e")
            else:
                kept = list(primitive_idempotents(T, seed=seed).idempotents)
            for eps in kept:
                emb = ideal_algebra(T, eps)
                D = emb.algebra
                cols = [emb.coords(T.mul(eps, q.reduce(_kron(F, C.basis_vector(x), C2.unit))))
                        for x in range(C.dim)]
                incl = tuple(tuple(c[k] for c in cols) for k in range(D.dim))
                out.append((j, D, incl))
    return out, tensor_dim


@dataclass
class SplittingTowerRecord:
    base: StructureAlgebra
    algebra: StructureAlgebra
    stages: list                     # explicit blocks: stages[0] = base, stages[m] = blocks of A^[m]
    dims: list                       # k-dimensions of A^[1], ..., A^[n+1]
    tensor_dims: list                # k-dimensions of A^[m] (x)_{A^[m-1]} A^[m], m = 1..n
    degree: int
    component_degrees: list = dc_field(default_factory=list)
    summaries: list = dc_field(default_factory=list)    # block dims with multiplicity, per stage

    @property
    def materialized(self) -> int:
        """Number of stages (after the base) whose blocks are held explicitly."""
        return len(self.stages) - 1

    def stage_algebra(self, m: int) -> StructureAlgebra:
        if m == 0:
            return self.base
        if m > len(self.dims):
            return zero_algebra(self.algebra.field)
        if m >= len(self.stages):
            raise CapacityError(f"stage {m} has {sum(self.summaries[m - 1].values())} blocks; "
                                f"only the first {self.materialized} stages are kept explicitly")
        if not self.stages[m]:
            return zero_algebra(self.algebra.field)
        return direct_product(*[b.algebra for b in self.stages[m]])

    def structure_map(self, m: int):
        """A^[m-1] -> A^[m] in block coordinates (blocks concatenated in stage order)."""
        if m >= len(self.stages) and 1 <= m <= len(self.dims):
            raise CapacityError(f"stage {m} is not kept explicitly")
        if not 1 <= m < len(self.stages):
            raise UsageError(f"no structure map into stage {m}")
        F = self.algebra.field
        offs = [0]
        for blk in self.stages[m - 1]:
            offs.append(offs[-1] + blk.algebra.dim)
        cur = self.stages[m]
        rows = [[F.zero] * offs[-1] for _ in range(sum(b.algebra.dim for b in cur))]
        r0 = 0
        for blk in cur:
            for i, row in enumerate(blk.inclusion):
                for j, x in enumerate(row):
                    rows[r0 + i][offs[blk.parent] + j] = x
            r0 += blk.algebra.dim
        return rows

    def block_summary(self, m: int):
        cnt = self.summaries[m - 1] if 1 <= m <= len(self.summaries) else Counter()
        return [[d, cnt[d]] for d in sorted(cnt)]

    def to_json(self):
        n_stages = len(self.dims)
        return {
            "degree": self.degree,
            "dims": list(self.dims),
            "tensor_dims": list(self.tensor_dims),
            "component_degrees": list(self.component_degrees),
            "stages": [{"stage": m, "dim": self.dims[m - 1], "blocks": self.block_summary(m)}
                       for m in range(1, n_stages + 1)],
        }


MATERIALIZE_BLOCKS = 4096


def _family_key(finite, R, kids):
    # over a finite field every block is a field, and a field extension of a finite field
    # is determined up to isomorphism by its degree, so the degrees classify the family
    if finite:
        return ("degrees", R.dim, tuple(sorted(C.dim // R.dim for C, _ in kids)))
    return ("exact", R, kids)


def _key_order(key):
    if key[0] == "degrees":
        return (0, key[1], key[2], "")
    R, kids = key[1], key[2]
    return (1, R.dim, tuple(C.dim for C, _ in kids), repr((R.structure, kids)))


def _materialize(prev, cur, seed, memo=None):
    """Explicit blocks of the next stage, reusing the family expansions."""
    groups: dict[int, list[int]] = {}
    for idx, blk in enumerate(cur):
        groups.setdefault(blk.parent, []).append(idx)
    nxt = []
    for p in sorted(groups):
        kids = groups[p]
        key = (prev[p].algebra, tuple((cur[k].algebra, cur[k].inclusion) for k in kids))
        memo = {} if memo is None else memo
        if key not in memo:
            memo[key] = _expand(key[0], key[1], seed)
        for j, D, incl in memo[key][0]:
            nxt.append(Block(D, kids[j], incl, cur[kids[j]].root))
    return nxt


def relative_splitting_tower(b: RelativeAlgebra, max_steps: int | None = None, *,
                             seed: int = 0, explicit: bool | int = True) -> SplittingTowerRecord:
    """Splitting tower of B over an etale base R, one connected block at a time.

    ``explicit`` controls how many blocks a stage may have and still be kept as
    explicit algebras with structure maps (True: up to ``MATERIALIZE_BLOCKS``,
    False: none beyond the first stage).  Dimensions and degrees never need it.
    """
    R, B = b.base, b.total
    F = B.field
    require_commutative(B, "splitting_tower")
    if not etale_via_trace_form(R):
        raise UsageError("base algebra is not etale over the field")
    if not etale_via_trace_form(B):
        raise NotSeparable("not separable over base")
    base_dec = primitive_idempotents(R, seed=seed)
    base_blocks = []
    base_embs = []
    for i, eps in enumerate(base_dec.idempotents):
        emb = ideal_algebra(R, eps)
        base_embs.append(emb)
        base_blocks.append(Block(emb.algebra, -1, (), i))
    stage1 = []
    first_cols = []
    if B.dim:
        for delta in primitive_idempotents(B, seed=seed).idempotents:
            emb = ideal_algebra(B, delta)
            parents = [i for i, eps in enumerate(base_dec.idempotents)
                       if not B.is_zero(B.mul(delta, b.image(eps)))]
            if len(parents) != 1:
                raise ConsistencyError("block of B does not lie over a single base block")
            i = parents[0]
            cols = [emb.coords(B.mul(delta, b.image(v))) for v in base_embs[i].vectors]
            incl = tuple(tuple(c[k] for c in cols) for k in range(emb.algebra.dim))
            stage1.append(Block(emb.algebra, i, incl, i))
    # Siblings over one parent form a family; isomorphic families expand isomorphically, so a
    # stage is tracked as family classes with multiplicities (per root) and one representative.
    finite = F.is_finite
    families: dict = {}

    def add_family(root, parent_alg, kids, mult):
        key = _family_key(finite, parent_alg, kids)
        entry = families.setdefault(key, [(parent_alg, kids), Counter()])
        entry[1][root] += mult

    fam_of = {}
    for idx, blk in enumerate(stage1):
        fam_of.setdefault(blk.parent, []).append(idx)
    for p, kids in fam_of.items():
        add_family(base_blocks[p].root, base_blocks[p].algebra,
                   tuple((stage1[k].algebra, stage1[k].inclusion) for k in kids), 1)
    stages = [base_blocks, stage1]
    keep = MATERIALIZE_BLOCKS if explicit is True else int(explicit or 0)
    limit = B.dim + 1 if max_steps is None else max_steps
    memo: dict = {}
    dims = [B.dim]
    tensor_dims = []
    summaries = [Counter(blk.algebra.dim for blk in stage1)]
    roots_at = [{blk.root for blk in stage1}]
    while families:
        if len(dims) > limit:
            raise CapacityError(f"splitting tower exceeds {limit} steps")
        current, families = families, {}
        tdim = 0
        summary = Counter()
        roots = set()
        for key in sorted(current, key=_key_order):
            (parent_alg, kids), mults = current[key]
            total = sum(mults.values())
            if key not in memo:
                memo[key] = _expand(parent_alg, kids, seed)
            blocks, td = memo[key]
            tdim += total * td
            by_parent: dict[int, list] = {}
            for j, D, incl in blocks:
                by_parent.setdefault(j, []).append((D, incl))
                summary[D.dim] += total
            if blocks:
                roots.update(mults)
            for j in sorted(by_parent):
                for root, m in sorted(mults.items()):
                    add_family(root, kids[j][0], tuple(by_parent[j]), m)
        tensor_dims.append(tdim)
        dims.append(sum(d * c for d, c in summary.items()))
        summaries.append(summary)
        roots_at.append(roots)
        if len(stages) == len(dims) and sum(summary.values()) <= keep:
            stages.append(_materialize(stages[-2], stages[-1], seed))
    for m in range(len(tensor_dims)):
        if dims[m + 1] != tensor_dims[m] - dims[m]:
            raise ConsistencyError("dim A^[n+1] != dim(A^[n] (x) A^[n]) - dim A^[n]")
    degree = len(dims) - 1
    comp = [0] * len(base_blocks)
    for m, roots in enumerate(roots_at, start=1):
        for r in roots:
            comp[r] = max(comp[r], m)
    return SplittingTowerRecord(R, B, stages, dims, tensor_dims, degree, comp, summaries)


def splitting_tower(a: StructureAlgebra, max_steps: int | None = None, *, seed: int = 0,
                    explicit: bool | int = True) -> SplittingTowerRecord:
    """Splitting tower of a commutative separable algebra over its field."""
    return relative_splitting_tower(RelativeAlgebra.over_field(a), max_steps, seed=seed, explicit=explicit)


def degree(a: StructureAlgebra, max_steps: int | None = None, *, seed: int = 0) -> int:
    return splitting_tower(a, max_steps, seed=seed, explicit=False).degree


@dataclass(frozen=True)
class DegreeFunction:
    components: tuple      # degree over each primitive factor of the base
    base_idempotents: tuple

    @property
    def global_degree(self) -> int:
        return max(self.components, default=0)

    def to_json(self):
        return {"components": list(self.components), "global": self.global_degree}


def degree_function(b, max_steps: int | None = None, *, seed: int = 0) -> DegreeFunction:
    """Degrees of B over each field factor of its base."""
    if isinstance(b, StructureAlgebra):
        b = RelativeAlgebra.over_field(b)
    rec = relative_splitting_tower(b, max_steps, seed=seed)
    idems = tuple(primitive_idempotents(b.base, seed=seed).idempotents)
    return DegreeFunction(tuple(rec.component_degrees), idems)


@dataclass(frozen=True)
class SplitRetraction:
    idempotent: tuple        # e with g(e) = 1
    complement: Embedded     # C = (1 - e) b


def split_retraction(b: StructureAlgebra, g, f, *, seed: int = 0) -> SplitRetraction:
    """b = a x C with first projection g, for algebra maps g: b -> a, f: a -> b, g f = id."""
    require_commutative(b, "split_retraction")
    F = b.field
    da = len(g)
    if any(len(r) != b.dim for r in g) or len(f) != b.dim or any(len(r) != da for r in f):
        raise UsageError("g and f have incompatible shapes")
    gf = linalg.matmul(F, g, f) if da else []
    if gf != linalg.identity(F, da):
        raise UsageError("g o f is not the identity")
    if not etale_via_trace_form(b):
        raise NotSeparable("split_retraction requires a separable algebra")
    dec = primitive_idempotents(b, seed=seed)
    e = b.zero_vector
    for eps in dec.idempotents:
        if any(x != F.zero for x in _apply(F, g, eps)):
            e = b.add(e, eps)
    unit_a = _apply(F, g, b.unit)
    if _apply(F, g, e) != unit_a:
        raise ConsistencyError("no idempotent with g(e) = 1")
    eb = ideal_algebra(b, e)
    if eb.algebra.dim != da:
        raise ConsistencyError("g does not restrict to an isomorphism e b -> a")
    return SplitRetraction(e, ideal_algebra(b, b.sub(b.unit, e)))
