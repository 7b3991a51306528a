import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_commutative
from sepalg.errors import CapacityError, NotSeparable, UsageError
from sepalg.exactcore import GF, QQ
from sepalg.fdalg import (GroupAction, RelativeAlgebra, base_change, base_field, degree,
                          degree_function, direct_product, etale_via_trace_form, fixed_subalgebra,
                          frobenius_extension, galois_check, monogenic, primitive_idempotents,
                          relative_tensor_square, separability_idempotent, split_algebra,
                          split_retraction, splitting_step, splitting_tower, unblocked_tower_dims,
                          validate, zero_algebra)
from sepalg.grp import PermGroup

F2, F3 = GF(2), GF(3)
F4 = monogenic(F2, [1, 1, 1])
F8 = monogenic(F2, [1, 1, 0, 1])


def n_idempotents(a):
    return len(primitive_idempotents(a).idempotents) if a.dim else 0


# -- relative tensor square and one step ---------------------------------------------------

def test_relative_tensor_square_examples():
    B = random_commutative(F3, random.Random(5), 3)
    assert relative_tensor_square(RelativeAlgebra.over_field(B)).algebra.dim == B.dim ** 2
    ident = tuple(tuple(1 if i == j else 0 for j in range(F4.dim)) for i in range(F4.dim))
    assert relative_tensor_square(RelativeAlgebra(F4, F4, ident)).algebra.dim == F4.dim
    assert relative_tensor_square(RelativeAlgebra.over_field(F4)).algebra.dim == 4


def test_splitting_step_examples():
    ident = tuple(tuple(1 if i == j else 0 for j in range(F4.dim)) for i in range(F4.dim))
    assert splitting_step(RelativeAlgebra(F4, F4, ident)).complement.algebra.dim == 0
    step = splitting_step(RelativeAlgebra.over_field(split_algebra(F3, 2)))
    A1 = step.complement.algebra
    assert (A1.dim, n_idempotents(A1)) == (2, 2)
    assert splitting_step(step.next).complement.algebra.dim == 0
    A1 = splitting_step(RelativeAlgebra.over_field(F4)).complement.algebra
    assert (A1.dim, n_idempotents(A1), etale_via_trace_form(A1)) == (2, 1, True)


def test_splitting_step_rejects_inseparable():
    with pytest.raises(NotSeparable, match="not separable over base"):
        splitting_step(RelativeAlgebra.over_field(monogenic(F2, [0, 0, 1])))


# -- towers and degree ---------------------------------------------------------------------

def test_tower_examples():
    assert splitting_tower(zero_algebra(F2)).degree == 0
    rec = splitting_tower(split_algebra(F3, 3))
    assert rec.degree == 3 and rec.dims == [3, 6, 6, 0]
    assert splitting_tower(split_algebra(F2, 2)).dims == [2, 2, 0]
    assert degree(F8) == 3
    assert degree(F4) == 2
    with pytest.raises(NotSeparable):
        degree(monogenic(F2, [0, 0, 1]))


def test_tower_dimension_identity_and_structure_maps():
    for a in (split_algebra(F3, 3), F8, direct_product(F4, base_field(F2)), monogenic(QQ, [-2, 0, 1])):
        rec = splitting_tower(a)
        for m in range(len(rec.tensor_dims)):
            assert rec.dims[m + 1] == rec.tensor_dims[m] - rec.dims[m]
        for m in range(1, rec.materialized + 1):
            prev, cur = rec.stage_algebra(m - 1), rec.stage_algebra(m)
            if cur.dim and prev.dim:
                # the constructor checks that the map is a unital homomorphism
                RelativeAlgebra(prev, cur, rec.structure_map(m))
            assert validate(cur).ok


def test_blockwise_tower_matches_direct_tower():
    for a in (split_algebra(F2, 3), F4, F8, direct_product(F4, base_field(F2)),
              monogenic(F3, [2, 2, 1])):
        assert splitting_tower(a).dims == unblocked_tower_dims(a)


def test_max_steps_capacity():
    with pytest.raises(CapacityError):
        splitting_tower(split_algebra(F2, 3), max_steps=1)


@pytest.mark.parametrize("F", [F2, F3, QQ], ids=str)
def test_degree_equals_dimension_for_etale(F):
    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=8, deadline=None)
    def check(seed):
        # over Q a random quartic usually has Galois group S4; see the dedicated quartics below
        a = random_commutative(F, random.Random(seed), 3 if F == QQ else 4, etale=True)
        assert degree(a, seed=seed) == a.dim

    check()


@pytest.mark.parametrize("f", [[-2, 0, 0, 0, 1], [1, 0, 0, 0, 1]], ids=["x4-2", "x4+1"])
def test_rational_quartic_fields(f):
    rec = splitting_tower(monogenic(QQ, f), explicit=False)
    assert rec.degree == 4 and rec.dims == [4, 12, 24, 24, 0]


def test_degree_survives_base_change_to_splitting_field():
    split = base_change(F8, GF(8))
    assert n_idempotents(split) == 3
    assert degree(split) == degree(F8) == 3


def test_degree_additivity():
    rng = random.Random(12)
    for _ in range(6):
        a = random_commutative(F3, rng, 3, etale=True)
        b = random_commutative(F3, rng, 3, etale=True)
        assert degree(direct_product(a, b)) == degree(a) + degree(b)


def test_degree_function_examples():
    kk = split_algebra(F2, 2)
    # total k^5 over k x k: first factor gets k^2, second k^3
    M = tuple((1, 0) if r < 2 else (0, 1) for r in range(5))
    df = degree_function(RelativeAlgebra(kk, split_algebra(F2, 5), M))
    assert df.components == (2, 3) and df.global_degree == 3
    # a = (k, 0): the total algebra is k, and the second idempotent maps to 0
    df = degree_function(RelativeAlgebra(kk, base_field(F2), ((1, 0),)))
    assert df.components == (1, 0)
    assert degree_function(split_algebra(F3, 4)).components == (4,)


def test_split_retraction_examples():
    kk = split_algebra(F2, 2)
    r = split_retraction(kk, [[1, 0]], [[1], [1]])
    assert r.complement.algebra.dim == 1
    a = F4
    ident = [[1, 0], [0, 1]]
    assert split_retraction(a, ident, ident).complement.algebra.dim == 0
    b = direct_product(F4, base_field(F2))
    r = split_retraction(b, [[0, 0, 1]], [[1], [0], [1]])
    C = r.complement.algebra
    assert (C.dim, n_idempotents(C), etale_via_trace_form(C)) == (2, 1, True)
    with pytest.raises(UsageError):
        split_retraction(kk, [[1, 0]], [[0], [1]])


# -- Galois --------------------------------------------------------------------------------

def test_galois_examples():
    assert galois_check(frobenius_extension(2, [1, 1, 1])).ok
    Z2 = PermGroup(2, [(1, 0)])
    rep = galois_check(base_field(F2).with_action(GroupAction(Z2, (((1,),),))))
    assert not rep.ok and "shear map" in rep.failed()
    swap = split_algebra(F3, 2).with_action(GroupAction(Z2, (((0, 1), (1, 0)),)))
    assert galois_check(swap).ok


def test_galois_means_separable_of_degree_order():
    for p, f in [(2, [1, 1, 1]), (2, [1, 1, 0, 1]), (3, [2, 2, 1]), (2, [1, 1, 0, 0, 1])]:
        a = frobenius_extension(p, f)
        assert galois_check(a).ok
        assert separability_idempotent(a) is not None
        assert degree(a) == a.action.group.order


def test_fixed_subalgebra_examples():
    a = frobenius_extension(2, [1, 1, 1])
    G = a.action.group
    assert fixed_subalgebra(a, G.whole).algebra.dim == 1
    assert fixed_subalgebra(a, G.trivial).algebra.dim == a.dim
    Z4 = PermGroup(4, [(1, 2, 3, 0)])
    shift = tuple(tuple(1 if r == (c + 1) % 4 else 0 for c in range(4)) for r in range(4))
    k4 = split_algebra(F3, 4).with_action(GroupAction(Z4, (shift,)))
    assert galois_check(k4).ok
    sub = fixed_subalgebra(k4, Z4.subgroup([(2, 3, 0, 1)]))
    assert sub.algebra.dim == 2
    assert separability_idempotent(sub.algebra) is not None


def test_galois_action_must_be_valid():
    Z2 = PermGroup(2, [(1, 0)])
    with pytest.raises(UsageError):
        galois_check(F4)
    bad = F4.with_action(GroupAction(Z2, (((1, 1), (1, 0)),)))
    with pytest.raises(UsageError):
        galois_check(bad)


def test_counted_stages_match_explicit_stages():
    rng = random.Random(31)
    for F in (F2, F3, F2, F3):
        for _ in range(3):
            a = random_commutative(F, rng, 3, etale=True)
            full = splitting_tower(a, explicit=10 ** 4)
            lean = splitting_tower(a, explicit=False)
            assert (lean.dims, lean.tensor_dims, lean.degree) == (full.dims, full.tensor_dims, full.degree)
            assert lean.to_json() == full.to_json()
            for m in range(1, full.materialized + 1):
                assert full.stage_algebra(m).dim == full.dims[m - 1]


def test_large_split_degree_without_materializing():
    rec = splitting_tower(split_algebra(F2, 11), explicit=False)
    assert rec.degree == 11 and rec.dims[-2] == 39916800
    assert rec.materialized == 1
    with pytest.raises(CapacityError):
        rec.stage_algebra(5)
    assert rec.stage_algebra(1).dim == 11
