import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_subgroups
from sepalg.errors import CapacityError, UsageError
from sepalg.grp import (PermGroup, Subgroup, all_subgroups, compose, conjugacy_classes_of_subgroups,
                        cycle_string, double_coset_decomposition, elementary_abelian_subgroups,
                        invert, is_cyclic, is_generalized_quaternion, normalizer_and_weyl, np_closure,
                        p_part, p_rank, parse_cycles, rank_one_classification, sylow_subgroup)
from sepalg.gset import (GSet, RightRegular, burnside_count, coproduct, coset_gset, fixed_points,
                         gset_rank, left_regular_on_elements, natural_gset, orbit_decomposition,
                         product, regular_gset, subsets_gset, torsor_check, trivial_gset)
from sepalg.io import corpus_names, load_group

CORPUS = {name: load_group(name) for name in corpus_names("groups")}
SMALL = {n: G for n, G in CORPUS.items() if G.order <= 24}


def primes_of(n):
    return [q for q in range(2, n + 1) if n % q == 0 and all(q % d for d in range(2, q))]


def S(G, *cycles):
    return G.subgroup([parse_cycles(c, G.degree) for c in cycles])


# -- permutations and generation -------------------------------------------------------------

def test_cycle_notation_round_trip():
    for G in (CORPUS["s4"], CORPUS["q8"], CORPUS["sl23"]):
        for g in G.elements:
            assert parse_cycles(cycle_string(g), G.degree) == g


def test_compose_applies_right_factor_first():
    a = parse_cycles("(0 1)", 3)
    b = parse_cycles("(1 2)", 3)
    ab = compose(a, b)
    assert ab[1] == a[b[1]] == 2 and ab[2] == a[b[2]] == 0
    assert compose(a, invert(a)) == (0, 1, 2)


def test_generation_examples():
    assert PermGroup(4, [parse_cycles("(0 1 2 3)", 4)]).order == 4
    assert PermGroup(3, [parse_cycles("(0 1 2)", 3), parse_cycles("(0 1)", 3)]).order == 6
    Q8 = CORPUS["q8"]
    assert Q8.order == 8 and not Q8.is_abelian()
    assert len(Q8.elements_of_order(2)) == 1 and len(Q8.elements_of_order(4)) == 6
    assert is_generalized_quaternion(Q8, Q8.whole)


def test_bad_permutations_and_capacity():
    with pytest.raises(UsageError):
        PermGroup(3, [(0, 0, 1)])
    with pytest.raises(CapacityError):
        PermGroup(6, [parse_cycles("(0 1 2 3 4 5)", 6), parse_cycles("(0 1)", 6)], max_order=100)


@pytest.mark.parametrize("name", ["z4", "c2xc2", "s3", "d8", "q8"])
def test_all_subgroups_against_subset_search(name):
    G = CORPUS[name]
    found = sorted(sorted(s.elements) for s in all_subgroups(G))
    assert found == sorted(sorted(s) for s in brute_subgroups(G))


def test_subgroup_counts():
    counts = {"s4": 30, "a4": 10, "sl23": 15, "q16": 11, "d8": 10, "q8": 6}
    for name, n in counts.items():
        assert len(all_subgroups(CORPUS[name])) == n
    assert len(conjugacy_classes_of_subgroups(CORPUS["s4"], all_subgroups(CORPUS["s4"]))) == 11


# -- Sylow, p-rank, N_p ---------------------------------------------------------------------

def test_sylow_examples():
    S3, Z4 = CORPUS["s3"], CORPUS["z4"]
    assert sylow_subgroup(S3, 3).elements == S(S3, "(0 1 2)").elements
    assert sylow_subgroup(S3, 2).order == 2
    assert sylow_subgroup(Z4, 2).elements == Z4.whole.elements
    assert sylow_subgroup(S3, 5).order == 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_sylow_order_is_p_part(name):
    G = CORPUS[name]
    for p in primes_of(G.order):
        assert sylow_subgroup(G, p).order == p_part(G.order, p)


def test_p_rank_examples():
    assert p_rank(CORPUS["z4"], 2) == 1
    assert p_rank(CORPUS["c2xc2"], 2) == 2
    assert p_rank(CORPUS["q8"], 2) == 1
    assert p_rank(CORPUS["s4"], 2) == 2
    assert p_rank(CORPUS["c3xc3"], 3) == 2


@pytest.mark.parametrize("name", sorted(SMALL))
def test_p_rank_matches_exhaustive_search(name):
    G = SMALL[name]
    for p in primes_of(G.order):
        r = p_rank(G, p)
        assert r == p_rank(G, p, exhaustive=True)
        elab = elementary_abelian_subgroups(G, p)
        assert max(E.order for E in elab) == p ** r


def test_np_closure_examples():
    S3 = CORPUS["s3"]
    assert np_closure(S3, 3).elements == S(S3, "(0 1 2)").elements
    V = CORPUS["c2xc2"]
    assert np_closure(V, 2).order == 4
    assert np_closure(CORPUS["z6"], 2).order == 2


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_np_closure_is_normal_and_contains_order_p_elements(name):
    G = CORPUS[name]
    for p in primes_of(G.order):
        N = np_closure(G, p)
        assert N.is_normal()
        assert all(g in N.elements for g in G.elements_of_order(p))


def test_weyl_examples():
    S3, Q8 = CORPUS["s3"], CORPUS["q8"]
    wd = normalizer_and_weyl(S3, S(S3, "(0 1 2)"))
    assert wd.normalizer.order == 6 and wd.weyl.order == 2
    Z = Subgroup(Q8, frozenset(Q8.elements_of_order(2)) | {Q8.identity})
    wd = normalizer_and_weyl(Q8, Z)
    assert wd.normalizer.order == 8 and wd.weyl.order == 4
    assert all(wd.weyl.element_order(g) <= 2 for g in wd.weyl.elements) and wd.weyl.is_abelian()
    assert normalizer_and_weyl(S3, S3.whole).weyl.order == 1


# -- double cosets --------------------------------------------------------------------------

def test_double_coset_examples():
    S3 = CORPUS["s3"]
    assert len(double_coset_decomposition(S3, S3.whole, S3.whole).cosets) == 1
    A3 = S(S3, "(0 1 2)")
    dc = double_coset_decomposition(S3, A3, A3)
    assert len(dc.cosets) == 2 and all(c.intersection.order == 3 for c in dc.cosets)
    C2 = S(S3, "(0 1)")
    dc = double_coset_decomposition(S3, C2, C2)
    assert sorted(c.intersection.order for c in dc.cosets) == [1, 2]


@pytest.mark.parametrize("name", ["s3", "z6", "d8", "q8", "a4", "c3xc3", "z12"])
def test_double_cosets_are_product_orbits(name):
    G = CORPUS[name]
    subs = all_subgroups(G)
    for H, K in itertools.product(subs, repeat=2):
        dc = double_coset_decomposition(G, H, K)
        prod = product(coset_gset(G, H), coset_gset(G, K))
        sizes = sorted(len(o) for o in prod.orbits)
        assert sizes == sorted(c.orbit_size for c in dc.cosets)
        # the orbit of (H, gamma K) is the image of beta on every x
        c0 = dc.cosets[-1]
        assert len({dc.beta(len(dc.cosets) - 1, x) for x in G.elements}) == c0.orbit_size


def test_double_coset_identity_on_s4_and_sl23():
    for name in ("s4", "sl23"):
        G = CORPUS[name]
        subs = all_subgroups(G)
        for H, K in itertools.product(subs, repeat=2):
            dc = double_coset_decomposition(G, H, K)
            assert sum(c.orbit_size for c in dc.cosets) == (G.order // H.order) * (G.order // K.order)


# -- rank one -------------------------------------------------------------------------------

def test_rank_one_examples():
    assert rank_one_classification(CORPUS["z8"], 2).kind == "cyclic"
    assert rank_one_classification(CORPUS["q8"], 2).kind == "generalized-quaternion"
    assert rank_one_classification(CORPUS["s3"], 3).kind == "cyclic"
    assert rank_one_classification(CORPUS["q16"], 2).kind == "generalized-quaternion"
    with pytest.raises(UsageError):
        rank_one_classification(CORPUS["c2xc2"], 2)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_rank_one_maximal_elementary_abelian_are_conjugate(name):
    G = CORPUS[name]
    for p in primes_of(G.order):
        if p_rank(G, p) != 1:
            continue
        cls = rank_one_classification(G, p)
        E0 = cls.maximal_elementary_abelian[0]
        for E, g in zip(cls.maximal_elementary_abelian, cls.conjugators):
            assert E0.conjugate(g) == E
        assert is_cyclic(G, cls.sylow) or (p == 2 and is_generalized_quaternion(G, cls.sylow))


# -- G-sets -----------------------------------------------------------------------------------

def test_orbit_examples():
    S3 = CORPUS["s3"]
    orbs = orbit_decomposition(regular_gset(S3))
    assert len(orbs) == 1 and orbs[0][1].order == 1
    assert len(orbit_decomposition(trivial_gset(S3, 4))) == 4
    pairs = orbit_decomposition(subsets_gset(S3, 2))
    assert len(pairs) == 1 and pairs[0][1].order == 2


def test_rank_examples():
    S3 = CORPUS["s3"]
    X = coproduct(coset_gset(S3, S(S3, "(0 1 2)")), natural_gset(S3))
    assert gset_rank(X) == 5
    assert gset_rank(trivial_gset(S3, 0)) == 0
    assert gset_rank([trivial_gset(S3, 2), trivial_gset(S3, 7)]) == 7


@given(st.sampled_from(sorted(SMALL)), st.data())
@settings(max_examples=40, deadline=None)
def test_rank_laws_and_burnside(name, data):
    G = SMALL[name]
    subs = all_subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    x, y = coset_gset(G, H), coset_gset(G, K)
    assert gset_rank(coproduct(x, y)) == gset_rank(x) + gset_rank(y)
    assert gset_rank(product(x, y)) <= gset_rank(x) * gset_rank(y)
    assert sum(len(x.fixed_by(g)) for g in G.elements) == G.order
    z = coproduct(x, product(x, y))
    assert burnside_count(z) == len(z.orbits)
    for orb, stab in orbit_decomposition(z):
        assert len(orb) * stab.order == G.order


def test_torsor_examples():
    S3 = CORPUS["s3"]
    X = left_regular_on_elements(S3)
    assert torsor_check(X, S3, RightRegular(S3).action())
    Z1 = CORPUS["z1"]
    pt = trivial_gset(Z1, 1)
    assert torsor_check(pt, Z1, [(0,)])
    Y = coset_gset(S3, S(S3, "(0 1)"))
    # G acting through the trivial action commutes but is not free
    assert not torsor_check(Y, S3, [tuple(range(3))] * len(S3.generators))


def test_torsor_forces_matching_sizes():
    for name in ("z4", "q8", "s3"):
        G = CORPUS[name]
        X = left_regular_on_elements(G)
        assert torsor_check(X, G, RightRegular(G).action())
        assert len(X) == G.order
        assert all(X.stabilizer(i).order == 1 for i in range(len(X)))


def test_fixed_point_examples():
    S4 = CORPUS["s4"]
    H = S(S4, "(0 1)(2 3)", "(0 2)(1 3)")
    X = coset_gset(S4, H)
    assert len(fixed_points(X, S4.trivial)) == len(X)
    cosets = H.left_cosets()
    for Q in all_subgroups(S4):
        pts = fixed_points(X, Q)
        direct = [i for i, c in enumerate(cosets)
                  if Q.elements <= H.conjugate(c[0]).elements]
        assert len(pts) == len(direct)
    R = regular_gset(S4)
    assert len(fixed_points(R, S(S4, "(0 1)"))) == 0


def test_gset_rejects_bad_actions():
    S3 = CORPUS["s3"]
    with pytest.raises(UsageError):
        GSet(S3, ["a", "b"], [(0, 1)])
    with pytest.raises(UsageError):
        # (0 1 2) must act with order dividing 3
        GSet(S3, ["a", "b"], [(1, 0), (0, 1)])
