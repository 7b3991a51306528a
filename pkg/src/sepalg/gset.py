"""Finite G-sets: orbits, rank, fixed points and torsors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import UsageError
from .grp import PermGroup, Subgroup, compose, extend_to_group, normalizer


class GSet:
    """A finite set with a left action; ``action[i]`` permutes point indices for generator i."""

    def __init__(self, group: PermGroup, points, action):
        self.group = group
        self.points = tuple(str(p) for p in points)
        n = len(self.points)
        acts = []
        for perm in action:
            perm = tuple(int(x) for x in perm)
            if sorted(perm) != list(range(n)):
                raise UsageError(f"{list(perm)} is not a permutation of {n} points")
            acts.append(perm)
        if len(acts) != len(group.generators):
            raise UsageError(f"{len(acts)} generator actions for {len(group.generators)} generators")
        self.action = tuple(acts)
        images, bad = extend_to_group(group, self.action, compose, tuple(range(n)))
        if bad is not None:
            raise UsageError(f"action violates a group relation at generator {bad[1]}")
        self._images = images

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (isinstance(other, GSet) and self.group == other.group
                and self.points == other.points and self.action == other.action)

    def __hash__(self):
        return hash((self.points, self.action))

    def __repr__(self):
        return f"<GSet of {len(self.points)} points over {self.group!r}>"

    def act(self, g, x: int) -> int:
        return self._images[tuple(g)][x]

    def element_permutation(self, g):
        return self._images[tuple(g)]

    @cached_property
    def orbits(self) -> list:
        seen = set()
        out = []
        for x in range(len(self.points)):
            if x in seen:
                continue
            orb = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for perm in self.action:
                    z = perm[y]
                    if z not in orb:
                        orb.add(z)
                        frontier.append(z)
            seen |= orb
            out.append(sorted(orb))
        return out

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, frozenset(g for g in self.group.elements if self._images[g][x] == x))

    def fixed_by(self, g) -> list:
        perm = self._images[tuple(g)]
        return [x for x in range(len(perm)) if perm[x] == x]

    def to_json(self):
        return {"points": list(self.points),
                "action": {str(i): list(p) for i, p in enumerate(self.action)}}


def orbit_decomposition(x: GSet) -> list[tuple[list, Subgroup]]:
    out = []
    for orb in x.orbits:
        stab = x.stabilizer(orb[0])
        if len(orb) * stab.order != x.group.order:
            raise AssertionError("orbit-stabilizer identity fails")
        out.append((orb, stab))
    return out


def gset_rank(x) -> int:
    """|X|, or the largest component for a finite groupoid given as a list of G-sets."""
    if isinstance(x, GSet):
        return len(x)
    sizes = [gset_rank(c) for c in x]
    return max(sizes, default=0)


def burnside_count(x: GSet) -> int:
    """sum_g |X^g| / |G|, the number of orbits."""
    total = sum(len(x.fixed_by(g)) for g in x.group.elements)
    if total % x.group.order:
        raise AssertionError("Burnside sum is not divisible by |G|")
    return total // x.group.order


def torsor_check(x: GSet, gamma: PermGroup, gamma_action) -> bool:
    """Is the commuting Gamma-action on x free and transitive?"""
    gx = GSet(gamma, x.points, gamma_action)
    for s in x.action:
        for t in gx.action:
            if compose(s, t) != compose(t, s):
                raise UsageError("Gamma-action does not commute with the G-action")
    if len(x) == 0 or len(gx.orbits) != 1:
        return False
    return all(gx.stabilizer(p).order == 1 for p in range(len(x)))


def fixed_points(x: GSet, q: Subgroup) -> GSet:
    """X^Q as a set with the action of the normalizer of Q."""
    pts = [p for p in range(len(x)) if all(x.act(g, p) == p for g in q.generators)]
    N = normalizer(x.group, q)
    NG = N.as_group()
    index = {p: i for i, p in enumerate(pts)}
    acts = [tuple(index[x.act(g, p)] for p in pts) for g in NG.generators]
    return GSet(NG, [x.points[p] for p in pts], acts)


# -- constructors -----------------------------------------------------------------

def coset_gset(G: PermGroup, H: Subgroup) -> GSet:
    """G/H with left multiplication; cosets ordered by least element."""
    cosets = H.left_cosets()
    where = {}
    for i, c in enumerate(cosets):
        for g in c:
            where[g] = i
    acts = [tuple(where[compose(s, c[0])] for c in cosets) for s in G.generators]
    return GSet(G, [f"c{i}" for i in range(len(cosets))], acts)


def regular_gset(G: PermGroup) -> GSet:
    return coset_gset(G, G.trivial)


def trivial_gset(G: PermGroup, n: int) -> GSet:
    ident = tuple(range(n))
    return GSet(G, [f"p{i}" for i in range(n)], [ident] * len(G.generators))


def natural_gset(G: PermGroup) -> GSet:
    return GSet(G, [str(i) for i in range(G.degree)], G.generators)


def subsets_gset(G: PermGroup, k: int) -> GSet:
    """G acting on the k-element subsets of its points."""
    subs = [frozenset(c) for c in combinations(range(G.degree), k)]
    index = {s: i for i, s in enumerate(subs)}
    acts = [tuple(index[frozenset(g[i] for i in s)] for s in subs) for g in G.generators]
    return GSet(G, ["{" + ",".join(map(str, sorted(s))) + "}" for s in subs], acts)


def coproduct(x: GSet, y: GSet) -> GSet:
    if x.group != y.group:
        raise UsageError("coproduct of sets over different groups")
    n = len(x)
    acts = [tuple(a) + tuple(n + b for b in bb) for a, bb in zip(x.action, y.action)]
    return GSet(x.group, [f"L{p}" for p in x.points] + [f"R{p}" for p in y.points], acts)


def product(x: GSet, y: GSet) -> GSet:
    if x.group != y.group:
        raise UsageError("product of sets over different groups")
    m = len(y)
    acts = [tuple(a[i] * m + b[j] for i in range(len(x)) for j in range(m))
            for a, b in zip(x.action, y.action)]
    return GSet(x.group, [f"({p},{q})" for p in x.points for q in y.points], acts)


@dataclass(frozen=True)
class RightRegular:
    """G acting on itself by right multiplication g -> g h^-1, as a commuting action."""

    group: PermGroup

    def action(self):
        G = self.group
        idx = G.index
        inv = G.inv
        return [tuple(idx[compose(g, inv(s))] for g in G.elements) for s in G.generators]


def left_regular_on_elements(G: PermGroup) -> GSet:
    """G on its elements by left multiplication, points ordered like ``G.elements``."""
    idx = G.index
    acts = [tuple(idx[compose(s, g)] for g in G.elements) for s in G.generators]
    return GSet(G, [f"g{i}" for i in range(G.order)], acts)
