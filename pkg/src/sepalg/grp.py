"""Finite permutation groups by full element enumeration.

Permutations are tuples in one-line form; ``mul(a, b)`` is the composite
``a o b`` (apply b first), so groups act on the left.  Conjugates follow the
left-action convention ``K^g := g K g^-1`` unless stated otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial

from .errors import CapacityError, ConsistencyError, UsageError
from .exactcore.fields import is_prime

DEFAULT_MAX_ORDER = 200_000


def compose(a, b):
    return tuple(a[i] for i in b)


def invert(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def parse_cycles(text: str, degree: int) -> tuple:
    """'(0 1 2)(3 4)' -> one-line permutation on ``degree`` points."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("", "()", "id", "1"):
        return tuple(perm)
    depth = 0
    cycles = []
    cur = ""
    for ch in text:
        if ch == "(":
            if depth:
                raise UsageError(f"nested parenthesis in {text!r}")
            depth, cur = 1, ""
        elif ch == ")":
            if not depth:
                raise UsageError(f"unbalanced parenthesis in {text!r}")
            depth = 0
            cycles.append([int(t) for t in cur.replace(",", " ").split()])
        elif depth:
            cur += ch
        elif not ch.isspace():
            raise UsageError(f"unexpected {ch!r} in cycle notation {text!r}")
    if depth:
        raise UsageError(f"unbalanced parenthesis in {text!r}")
    # cycles compose right-to-left like permutations
    for cyc in reversed(cycles):
        if any(not 0 <= x < degree for x in cyc) or len(set(cyc)) != len(cyc):
            raise UsageError(f"bad cycle {cyc} on {degree} points")
        step = list(range(degree))
        for i, x in enumerate(cyc):
            step[x] = cyc[(i + 1) % len(cyc)]
        perm = [step[perm[i]] for i in range(degree)]
    return tuple(perm)


def cycle_string(perm) -> str:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def extend_to_group(group, gen_images, compose_images, identity_image, eq=None):
    """Extend generator images multiplicatively over the whole group.

    Walks every Cayley-graph edge, so the returned failure is ``None`` exactly
    when the images define a homomorphism.  Returns ``(images, failure)``.
    """
    eq = eq or (lambda x, y: x == y)
    images = {group.identity: identity_image}
    queue = deque([group.identity])
    failure = None
    while queue:
        g = queue.popleft()
        for idx, s in enumerate(group.generators):
            h = compose(s, g)
            img = compose_images(gen_images[idx], images[g])
            if h in images:
                if failure is None and not eq(images[h], img):
                    failure = (g, idx)
            else:
                images[h] = img
                queue.append(h)
    return images, failure


class PermGroup:
    """A permutation group with its elements enumerated at construction."""

    def __init__(self, degree: int, generators, name: str | None = None,
                 max_order: int = DEFAULT_MAX_ORDER):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise UsageError(f"{list(g)} is not a permutation of {self.degree} points")
            gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self.named_subgroups: dict = {}
        self.identity = tuple(range(self.degree))
        seen = {self.identity}
        order = [self.identity]
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    queue.append(h)
                    if len(order) > max_order:
                        raise CapacityError(f"group order exceeds {max_order}")
        self.elements = tuple(sorted(order))
        self._set = frozenset(seen)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if factorial(self.degree) % len(self.elements):
            raise ConsistencyError("group order does not divide degree!")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return tuple(g) in self._set

    def __eq__(self, other):
        return isinstance(other, PermGroup) and (self.degree, self._set) == (other.degree, other._set) \
            and self.generators == other.generators

    def __hash__(self):
        return hash((self.degree, self.generators))

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label}: degree {self.degree}, order {self.order}>"

    def mul(self, a, b):
        return compose(a, b)

    def inv(self, a):
        return invert(a)

    def conj(self, g, x):
        """g x g^-1."""
        return compose(compose(g, x), invert(g))

    def element_order(self, g) -> int:
        if len(g) != self.degree:
            raise UsageError(f"{cycle_string(g)} does not act on {self.degree} points")
        k, h = 1, g
        while h != self.identity:
            h = compose(h, g)
            k += 1
        return k

    def power(self, g, n: int):
        h = self.identity
        for _ in range(n % self.element_order(g)):
            h = compose(h, g)
        return h

    def elements_of_order(self, n: int):
        return [g for g in self.elements if self.element_order(g) == n]

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self._set)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    def subgroup(self, generators) -> "Subgroup":
        return Subgroup(self, closure(self, [tuple(g) for g in generators]))

    def is_abelian(self) -> bool:
        return all(compose(a, b) == compose(b, a) for a in self.generators for b in self.generators)

    def to_json(self):
        out = {"degree": self.degree, "generators": [list(g) for g in self.generators]}
        if self.name:
            out["name"] = self.name
        return out


def closure(G: PermGroup, gens) -> frozenset:
    for g in gens:
        if g not in G:
            raise UsageError(f"{cycle_string(g)} is not in the group")
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = compose(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


class Subgroup:
    """A subgroup stored as its element set."""

    def __init__(self, parent: PermGroup, elements):
        self.parent = parent
        self.elements = frozenset(elements)
        if parent.identity not in self.elements:
            raise UsageError("subgroup must contain the identity")
        if parent.order % len(self.elements):
            raise ConsistencyError("subgroup order does not divide the group order (Lagrange)")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return self.elements <= other.elements

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    def is_closed(self) -> bool:
        return all(compose(a, b) in self.elements for a in self.elements for b in self.elements)

    def conjugate(self, g) -> "Subgroup":
        """g K g^-1."""
        gi = invert(g)
        return Subgroup(self.parent, frozenset(compose(compose(g, k), gi) for k in self.elements))

    def is_normal(self) -> bool:
        return all(self.conjugate(s) == self for s in self.parent.generators)

    @cached_property
    def generators(self) -> tuple:
        """Greedy small generating set, deterministic."""
        gens = []
        span = frozenset([self.parent.identity])
        for g in sorted(self.elements, key=lambda x: (-self.parent.element_order(x), x)):
            if g not in span:
                gens.append(g)
                span = closure(self.parent, gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def as_group(self, name=None) -> PermGroup:
        return PermGroup(self.parent.degree, self.generators or [self.parent.identity], name=name)

    def left_cosets(self):
        """Cosets gK as sorted lists, ordered by their least element."""
        seen = set()
        out = []
        for g in self.parent.elements:
            if g in seen:
                continue
            coset = sorted(compose(g, k) for k in self.elements)
            seen.update(coset)
            out.append(coset)
        return out

    def to_json(self):
        return {"order": self.order, "generators": [cycle_string(g) for g in self.generators]}


# -- subgroup machinery ------------------------------------------------------------

def group_from_generators(degree: int, generators, name=None, max_order=DEFAULT_MAX_ORDER) -> PermGroup:
    return PermGroup(degree, generators, name=name, max_order=max_order)


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _require_prime(p):
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    return Subgroup(G, frozenset(x for x in G.elements if H.conjugate(x) == H))


def sylow_subgroup(G: PermGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one step at a time inside normalizers."""
    _require_prime(p)
    target = p_part(G.order, p)
    P = G.trivial
    while P.order < target:
        N = normalizer(G, P)
        x = None
        for y in sorted(N.elements):
            if y in P.elements:
                continue
            # order of yP in N/P
            m, z = 1, y
            while z not in P.elements:
                z = compose(z, y)
                m += 1
            if m % p == 0:
                x = G.power(y, m // p)
                break
        if x is None:
            raise ConsistencyError("normalizer climbing stalled below the Sylow order")
        P = Subgroup(G, closure(G, list(P.generators) + [x]))
    return P


def cyclic_subgroups_of_order(G: PermGroup, n: int) -> list[Subgroup]:
    subs = {}
    for g in G.elements_of_order(n):
        S = G.subgroup([g])
        subs.setdefault(S.elements, S)
    return [subs[k] for k in sorted(subs, key=lambda s: sorted(s))]


def elementary_abelian_subgroups(G: PermGroup, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    """All nontrivial elementary abelian p-subgroups (of ``within`` if given)."""
    pool = sorted(g for g in G.elements_of_order(p) if within is None or g in within.elements)
    found = {}

    def grow(E: frozenset, start: int):
        for idx in range(start, len(pool)):
            x = pool[idx]
            if x in E or any(compose(x, y) != compose(y, x) for y in E):
                continue
            E2 = frozenset(compose(xp, e) for xp in _cyclic(G, x) for e in E)
            if E2 not in found:
                found[E2] = Subgroup(G, E2)
                grow(E2, idx + 1)

    grow(frozenset([G.identity]), 0)
    return sorted(found.values(), key=lambda S: (S.order, sorted(S.elements)))


def p_rank(G: PermGroup, p: int, *, exhaustive: bool = False) -> int:
    """Largest n with an elementary abelian subgroup of order p^n.

    Searches commuting sets of order-p elements.  Unless ``exhaustive``, the
    search runs inside one Sylow p-subgroup, which contains a conjugate of
    every p-subgroup.
    """
    _require_prime(p)
    within = None if exhaustive else sylow_subgroup(G, p)
    pool = sorted(g for g in G.elements_of_order(p) if within is None or g in within.elements)
    if not pool:
        return 0
    best = 0
    cap = 0
    n = p_part(G.order, p)
    while n > 1:
        n //= p
        cap += 1

    def search(E: frozenset, r: int, start: int):
        nonlocal best
        best = max(best, r)
        if best == cap:
            return
        for idx in range(start, len(pool)):
            x = pool[idx]
            if x in E or any(compose(x, y) != compose(y, x) for y in E):
                continue
            E2 = frozenset(compose(x_pow, e) for x_pow in _cyclic(G, x) for e in E)
            search(E2, r + 1, idx + 1)
            if best == cap:
                return

    search(frozenset([G.identity]), 0, 0)
    return best


def _cyclic(G, x):
    out = [G.identity]
    y = x
    while y != G.identity:
        out.append(y)
        y = compose(y, x)
    return out


def np_closure(G: PermGroup, p: int) -> Subgroup:
    """N_p(G): the subgroup generated by all elements of order p."""
    _require_prime(p)
    N = Subgroup(G, closure(G, G.elements_of_order(p)))
    if not N.is_normal():
        raise ConsistencyError("N_p(G) is not normal")
    return N


@dataclass
class WeylData:
    normalizer: Subgroup
    weyl: PermGroup           # N/P acting on the cosets N/P by left multiplication
    coset_reps: tuple         # W_0: least element of each coset nP, in order
    coset_index: dict         # element of N -> index of its coset


def quotient_group(G: PermGroup, N: Subgroup, K: Subgroup) -> tuple[PermGroup, tuple, dict]:
    """N/K for K normal in N, as a permutation group on the cosets N/K."""
    cosets = []
    index = {}
    for n in sorted(N.elements):
        if n in index:
            continue
        c = len(cosets)
        members = sorted(compose(n, k) for k in K.elements)
        cosets.append(members[0])
        for m in members:
            index[m] = c
    gens = []
    for s in N.generators:
        gens.append(tuple(index[compose(s, r)] for r in cosets))
    W = PermGroup(len(cosets), gens or [tuple(range(len(cosets)))])
    return W, tuple(cosets), index


def normalizer_and_weyl(G: PermGroup, P: Subgroup) -> WeylData:
    N = normalizer(G, P)
    W, reps, index = quotient_group(G, N, P)
    if W.order * P.order != N.order:
        raise ConsistencyError("|W| |P| != |N|")
    return WeylData(N, W, reps, index)


@dataclass
class DoubleCoset:
    representative: tuple
    intersection: Subgroup    # H cap gamma K gamma^-1
    orbit_size: int           # |G| / |H cap K^gamma|
    elements: frozenset


@dataclass
class DoubleCosetDecomposition:
    H: Subgroup
    K: Subgroup
    cosets: list

    def beta(self, idx: int, x):
        """The orbit map x (H cap K^gamma) -> (xH, x gamma K) as sorted coset lists."""
        gamma = self.cosets[idx].representative
        xH = tuple(sorted(compose(x, h) for h in self.H.elements))
        xgK = tuple(sorted(compose(compose(x, gamma), k) for k in self.K.elements))
        return xH, xgK

    def to_json(self):
        return [{"representative": cycle_string(c.representative),
                 "intersection_order": c.intersection.order,
                 "orbit_size": c.orbit_size,
                 "size": len(c.elements)} for c in self.cosets]


def double_coset_decomposition(G: PermGroup, H: Subgroup, K: Subgroup) -> DoubleCosetDecomposition:
    """H\\G/K with the G-orbits of G/H x G/K they index.

    The orbit of (H, gamma K) has stabilizer H cap gamma K gamma^-1; the
    cardinality identity sum |G|/|H cap K^gamma| = [G:H][G:K] is asserted.
    """
    seen = set()
    out = []
    for g in G.elements:
        if g in seen:
            continue
        dc = frozenset(compose(compose(h, g), k) for h in H.elements for k in K.elements)
        seen |= dc
        inter = Subgroup(G, H.elements & K.conjugate(g).elements)
        out.append(DoubleCoset(g, inter, G.order // inter.order, dc))
    total = sum(c.orbit_size for c in out)
    if total != (G.order // H.order) * (G.order // K.order):
        raise ConsistencyError("double coset cardinality identity fails")
    return DoubleCosetDecomposition(H, K, out)


def all_subgroups(G: PermGroup) -> list[Subgroup]:
    """Every subgroup, by repeatedly joining cyclic subgroups."""
    cyclic = {}
    for g in G.elements:
        S = closure(G, [g])
        cyclic.setdefault(S, g)
    found = set(cyclic)
    frontier = list(found)
    cyc_gens = sorted(cyclic.values())
    while frontier:
        nxt = []
        for S in frontier:
            for g in cyc_gens:
                if g in S:
                    continue
                T = _join(G, S, g)
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted((Subgroup(G, S) for S in found), key=lambda S: (S.order, sorted(S.elements)))


def _join(G, S, g):
    gens = list(Subgroup(G, S).generators) + [g]
    return closure(G, gens)


def conjugacy_classes_of_subgroups(G: PermGroup, subs) -> list[list[Subgroup]]:
    classes = []
    for S in subs:
        for cls in classes:
            R = cls[0]
            if R.order == S.order and any(R.conjugate(g) == S for g in G.elements):
                cls.append(S)
                break
        else:
            classes.append([S])
    return classes


@dataclass
class RankOneClassification:
    kind: str                 # "cyclic" or "generalized-quaternion"
    sylow: Subgroup
    maximal_elementary_abelian: list
    conjugators: list         # g_i with g_i E_0 g_i^-1 = E_i


def is_cyclic(G: PermGroup, S: Subgroup) -> bool:
    return any(G.element_order(g) == S.order for g in S.elements)


def is_generalized_quaternion(G: PermGroup, S: Subgroup) -> bool:
    """Order 2^k >= 8, a unique involution, and the presentation
    <a, b | a^(2^(k-1)), b^2 = a^(2^(k-2)), b a b^-1 = a^-1>."""
    n = S.order
    if n < 8 or n & (n - 1):
        return False
    if sum(1 for g in S.elements if G.element_order(g) == 2) != 1:
        return False
    half = n // 2
    for a in sorted(S.elements):
        if G.element_order(a) != half:
            continue
        A = frozenset(_cyclic(G, a))
        z = G.power(a, half // 2)
        for b in sorted(S.elements - A):
            if compose(b, b) == z and G.conj(b, a) == invert(a):
                return True
    return False


def rank_one_classification(G: PermGroup, p: int) -> RankOneClassification:
    r = p_rank(G, p)
    if r != 1:
        raise UsageError(f"p-rank is {r}, not 1")
    S = sylow_subgroup(G, p)
    if is_cyclic(G, S):
        kind = "cyclic"
    elif p == 2 and is_generalized_quaternion(G, S):
        kind = "generalized-quaternion"
    else:
        raise ConsistencyError("p-rank one Sylow subgroup is neither cyclic nor generalized quaternion")
    elab = elementary_abelian_subgroups(G, p)
    maximal = [E for E in elab if not any(E.elements < F.elements for F in elab)]
    E0 = maximal[0]
    conj = []
    for E in maximal:
        g = next((g for g in G.elements if E0.conjugate(g) == E), None)
        if g is None:
            raise ConsistencyError("maximal elementary abelian p-subgroups are not all conjugate")
        conj.append(g)
    return RankOneClassification(kind, S, maximal, conj)


def order_p_subgroups(G: PermGroup, p: int) -> list[Subgroup]:
    return cyclic_subgroups_of_order(G, p)


def subgroups_between(G: PermGroup, lower: Subgroup, upper: Subgroup) -> list[Subgroup]:
    """Subgroups V with lower <= V <= upper, assuming lower is normal in upper."""
    W, reps, index = quotient_group(G, upper, lower)
    out = []
    for U in all_subgroups(W):
        # w sends the coset ``lower`` (index 0) to coset w[0]
        cos = {w[0] for w in U.elements}
        elems = frozenset(n for n in upper.elements if index[n] in cos)
        out.append((U, Subgroup(G, elems)))
    return out
