"""Separability idempotents, the trace-form test, and the counit section.

An element of A (x) A is a coordinate vector indexed by ``i * n + j`` for the
pure tensor b_i (x) b_j, matching ``tensor_product``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConsistencyError, UsageError
from ..exactcore import linalg
from .algebra import AlgebraModule, StructureAlgebra, require_commutative, tensor_product, validate


def _centrality_system(a: StructureAlgebra, graded: bool):
    """Rows and right-hand side for mu(e) = 1 and a e = e a (Koszul signs if graded).

    Returns ``(rows, rhs, columns)`` where ``columns[c] = (i, j)`` names the
    unknown coefficient of b_i (x) b_j.
    """
    F = a.field
    n = a.dim
    par = [a.parity(i) for i in range(n)] if graded else [0] * n
    columns = [(i, j) for i in range(n) for j in range(n) if par[i] == par[j]]
    col = {ij: c for c, ij in enumerate(columns)}
    ncols = len(columns)
    table = a.table
    rows, rhs = [], []
    seen = set()

    def emit(sparse, b):
        if not sparse and b == F.zero:
            return
        key = (tuple(sorted(sparse.items())), b)
        if key in seen:
            return
        seen.add(key)
        row = [F.zero] * ncols
        for c, v in sparse.items():
            row[c] = v
        rows.append(row)
        rhs.append(b)

    # mu(e) = 1
    mu_rows = [dict() for _ in range(n)]
    for i, j, k, c in a.structure:
        if (i, j) in col:
            d = mu_rows[k]
            d[col[i, j]] = F.add(d.get(col[i, j], F.zero), c)
    for k in range(n):
        emit({c: v for c, v in mu_rows[k].items() if v != F.zero}, a.unit[k])

    # sum e_ij (b_l b_i (x) b_j - s b_i (x) b_l b_j) = 0 for every basis b_l
    for l in range(n):
        eqs: dict[tuple, dict] = {}
        for (i, j), c in col.items():
            for p, v in table[l][i]:
                d = eqs.setdefault((p, j), {})
                d[c] = F.add(d.get(c, F.zero), v)
            sign_neg = par[l] and par[j]
            for q, v in table[l][j]:
                d = eqs.setdefault((i, q), {})
                d[c] = F.sub(d.get(c, F.zero), F.neg(v) if sign_neg else v)
        for key in sorted(eqs):
            emit({c: v for c, v in eqs[key].items() if v != F.zero}, F.zero)
    return rows, rhs, columns


def _solve_system(a: StructureAlgebra, graded: bool):
    rows, rhs, columns = _centrality_system(a, graded)
    F = a.field
    n = a.dim
    sol = linalg.solve(F, rows, rhs, len(columns))
    if sol is None:
        return None
    x, kernel = sol
    e = [F.zero] * (n * n)
    for c, (i, j) in enumerate(columns):
        e[i * n + j] = x[c]
    return tuple(e), kernel


@dataclass(frozen=True)
class SeparabilityWitness:
    """The element e in A (x) A with mu(e) = 1 that commutes with A."""

    algebra: StructureAlgebra
    e: tuple

    @property
    def gamma(self):
        return self.e

    def terms(self):
        n = self.algebra.dim
        F = self.algebra.field
        return [(idx // n, idx % n, c) for idx, c in enumerate(self.e) if c != F.zero]

    def section(self, x):
        """sigma(x) = (x (x) 1) e."""
        a = self.algebra
        return tensor_mul(a, _kron(a, x, a.unit), self.e)

    def multiplication(self, t):
        """mu: A (x) A -> A."""
        a = self.algebra
        F = a.field
        n = a.dim
        out = a.zero_vector
        for idx, c in enumerate(t):
            if c != F.zero:
                out = a.add(out, a.scale(c, a.basis_product(idx // n, idx % n)))
        return out

    def verify(self) -> list:
        """Failed identities, empty when e is a genuine separability idempotent."""
        a = self.algebra
        fails = []
        if self.multiplication(self.e) != a.unit:
            fails.append("mu(e) != 1")
        for l in range(a.dim):
            b = a.basis_vector(l)
            left = tensor_mul(a, _kron(a, b, a.unit), self.e)
            right = tensor_mul(a, self.e, _kron(a, a.unit, b))
            if left != right:
                fails.append(f"e does not commute with basis element {l}")
        if tensor_mul(a, self.e, self.e) != self.e:
            fails.append("e is not idempotent")
        return fails

    def to_json(self):
        F = self.algebra.field
        return {"e": [[i, j, F.format(c)] for i, j, c in self.terms()]}


def tensor_mul(a: StructureAlgebra, s, t):
    """Product in A (x) A, coordinates indexed i * n + j, from the structure constants of A.

    Uses (sum s_ij b_i (x) b_j)(sum t_kl b_k (x) b_l) = sum_ik b_i b_k (x) S_i T_k with
    S_i, T_k the rows of s and t read as elements of A.
    """
    F = a.field
    n = a.dim
    zero = F.zero
    table = a.table
    S = [(i, s[i * n:(i + 1) * n]) for i in range(n) if any(c != zero for c in s[i * n:(i + 1) * n])]
    T = [(k, t[k * n:(k + 1) * n]) for k in range(n) if any(c != zero for c in t[k * n:(k + 1) * n])]
    out = [zero] * (n * n)
    for i, Si in S:
        for k, Tk in T:
            cell = table[i][k]
            if not cell:
                continue
            V = [(q, v) for q, v in enumerate(a.mul(Si, Tk)) if v != zero]
            for p_, u in cell:
                base = p_ * n
                for q, v in V:
                    out[base + q] = F.add(out[base + q], F.mul(u, v))
    return tuple(out)


def _kron(a, x, y):
    F = a.field
    return tuple(F.mul(s, t) for s in x for t in y)


def separability_idempotent(a: StructureAlgebra) -> SeparabilityWitness | None:
    """Solve for the separability idempotent; ``None`` when ``a`` is not separable.

    For commutative algebras the solution is unique; a nontrivial solution
    space is reported as an internal inconsistency.
    """
    require_commutative(a, "separability_idempotent")
    if a.dim == 0:
        return SeparabilityWitness(a, ())
    sol = _solve_system(a, graded=False)
    if sol is None:
        return None
    e, kernel = sol
    if kernel:
        raise ConsistencyError(f"separability idempotent is not unique ({len(kernel)}-dim family)")
    w = SeparabilityWitness(a, e)
    if tensor_mul(a, e, e) != e:
        raise ConsistencyError("separability idempotent is not idempotent")
    return w


def solution_space_dimension(a: StructureAlgebra, graded: bool = False) -> int | None:
    """Dimension of the affine solution set, or ``None`` when it is empty."""
    if a.dim == 0:
        return 0
    sol = _solve_system(a, graded)
    return None if sol is None else len(sol[1])


def tensor_witness(wa: SeparabilityWitness, wb: SeparabilityWitness) -> SeparabilityWitness:
    """Combine witnesses of a and b into one for a (x) b, and re-verify it."""
    a, b = wa.algebra, wb.algebra
    if a.is_graded or b.is_graded:
        raise UsageError("tensor_witness is implemented for ungraded algebras")
    F = a.field
    ab = tensor_product(a, b)
    na, nb = a.dim, b.dim
    N = na * nb
    e = [F.zero] * (N * N)
    for i, j, c in wa.terms():
        for k, l, d in wb.terms():
            e[(i * nb + k) * N + (j * nb + l)] = F.add(e[(i * nb + k) * N + (j * nb + l)], F.mul(c, d))
    w = SeparabilityWitness(ab, tuple(e))
    fails = w.verify()
    if fails:
        raise ConsistencyError("tensor of witnesses is not a witness: " + "; ".join(fails))
    return w


def trace_form(a: StructureAlgebra):
    """Gram matrix of (x, y) -> Tr(L_{xy}) on the basis."""
    F = a.field
    n = a.dim
    tr = [a.trace(a.basis_vector(k)) for k in range(n)]
    M = [[F.zero] * n for _ in range(n)]
    for i, j, k, c in a.structure:
        M[i][j] = F.add(M[i][j], F.mul(c, tr[k]))
    return M


def etale_via_trace_form(a: StructureAlgebra) -> bool:
    """Nondegeneracy of the trace form; the zero algebra counts as etale."""
    require_commutative(a, "etale_via_trace_form")
    if a.dim == 0:
        return True
    return linalg.rank(a.field, trace_form(a), a.dim) == a.dim


def graded_separability_idempotent(a: StructureAlgebra) -> SeparabilityWitness | None:
    """Separability idempotent of a graded-commutative algebra (Koszul signs).

    When a witness exists the odd part must vanish and the even part must be
    etale; either failure is raised as ``ConsistencyError``.
    """
    rep = validate(a, check_action=False)
    bad = [f for f in rep.failures if f["axiom"] in ("grading", "graded-commutativity")]
    if bad:
        raise UsageError(f"grading inconsistent with products at {bad[0]['indices']}")
    if a.dim == 0:
        return SeparabilityWitness(a, ())
    sol = _solve_system(a, graded=True)
    if sol is None:
        return None
    e, kernel = sol
    if any(a.parity(i) for i in range(a.dim)):
        raise ConsistencyError("graded witness found although the odd part is nonzero")
    if kernel:
        raise ConsistencyError("graded separability idempotent is not unique")
    even = StructureAlgebra(a.field, a.dim, a.structure, a.unit, a.basis)
    if not etale_via_trace_form(even):
        raise ConsistencyError("graded witness found but the even part is not etale")
    return SeparabilityWitness(a, e)


def counit_section_check(a: StructureAlgebra, m: AlgebraModule,
                         witness: SeparabilityWitness | None = None) -> bool:
    """Check eps_M o xi_M = id and A-linearity of xi_M(m) = sum e_ij b_i (x) b_j m."""
    if m.algebra != a:
        raise UsageError("module is over a different algebra")
    fails = m.validate()
    if fails:
        raise UsageError("invalid module: " + fails[0])
    if witness is None:
        witness = separability_idempotent(a)
    if witness is None:
        raise UsageError("algebra has no separability witness")
    F = a.field
    n, d = a.dim, m.dim
    terms = witness.terms()

    def xi(v):
        out = [F.zero] * (n * d)
        for i, j, c in terms:
            w = m.act(a.basis_vector(j), v)
            for r, x in enumerate(w):
                if x != F.zero:
                    out[i * d + r] = F.add(out[i * d + r], F.mul(c, x))
        return out

    def eps(t):
        out = (F.zero,) * d
        for i in range(n):
            chunk = tuple(t[i * d:(i + 1) * d])
            if any(x != F.zero for x in chunk):
                w = m.act(a.basis_vector(i), chunk)
                out = tuple(F.add(x, y) for x, y in zip(out, w))
        return out

    def left_act(l, t):
        # b_l acting on the A factor of A (x) M
        out = [F.zero] * (n * d)
        for i in range(n):
            for k, c in a.table[l][i]:
                for r in range(d):
                    x = t[i * d + r]
                    if x != F.zero:
                        out[k * d + r] = F.add(out[k * d + r], F.mul(c, x))
        return out

    for r in range(d):
        v = tuple(F.one if s == r else F.zero for s in range(d))
        xv = xi(v)
        if eps(xv) != v:
            return False
        for l in range(n):
            if xi(m.act(a.basis_vector(l), v)) != left_act(l, xv):
                return False
    return True
