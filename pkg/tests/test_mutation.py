import random

import pytest
from hypothesis import given, settings, strategies as st

from cosilt.derived import derived_hom, direct_sum_complexes, prod_equivalent, stalk
from cosilt.mutation import (NotASummand, compat_left, compat_right, indecomposables,
                             precover, right_condition_check, right_mutate)
from cosilt.quiver import Quiver
from cosilt.recollement import build_ladder
from cosilt.rep import dual_regular, regular
from cosilt.serial import parse_object

from gen import random_cosilting

A2, A3 = Quiver.linear(2), Quiver.linear(3)


def _same(X, expr):
    return prod_equivalent(X, parse_object(expr, X.quiver, X.field))[0]


def test_mutations_on_a2():
    assert _same(right_mutate(parse_object("DA", A2), parse_object("I_2", A2)).result, "P_2 + I_2")
    assert _same(right_mutate(parse_object("P_2 + I_2", A2), parse_object("P_2", A2)).result, "I_1[-1] + P_2")


def test_mutation_on_a3_at_two_summands():
    m = right_mutate(parse_object("DA", A3), [parse_object("I_2", A3), parse_object("I_3", A3)])
    assert _same(m.result, "S_2 + I_2 + I_3")
    assert len(m.precovers) == 1


def test_mutating_at_everything_changes_nothing():
    X = parse_object("DA", A3)
    assert _same(right_mutate(X, X).result, "DA")


def test_not_a_summand():
    with pytest.raises(NotASummand):
        right_mutate(parse_object("DA", A3), parse_object("S_2", A3))


def test_precover_triangle_on_a2():
    # I_1 = S_1 has precover I_2 -> S_1 by Prod(I_2); its cocone is P_2 = S_2
    pc = precover(parse_object("I_1", A2), [parse_object("I_2", A2)])
    assert pc.triangle.check()
    assert _same(pc.E0, "I_2") and _same(pc.Z, "P_2")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_precovers_are_precovers(seed):
    # with Hom(E, E0[1]) = 0, surjectivity of Hom(E, E0) -> Hom(E, Y) is Hom(E, Z[1]) = 0
    rng = random.Random(seed)
    Q = Quiver.linear(rng.randint(2, 4))
    C = random_cosilting(rng, Q)
    parts = indecomposables(C)
    keep = rng.sample(parts, rng.randint(1, len(parts) - 1))
    E = direct_sum_complexes(keep, Q)
    m = right_mutate(C, keep)
    for pc in m.precovers:
        assert derived_hom(E, pc.Z).dim(1) == 0
        assert pc.triangle.check()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_irreducible_mutation_replaces_one_summand(seed):
    rng = random.Random(seed)
    Q = Quiver.linear(rng.randint(2, 4))
    C = random_cosilting(rng, Q)
    parts = indecomposables(C)
    drop = rng.randrange(len(parts))
    keep = [p for i, p in enumerate(parts) if i != drop]
    out = indecomposables(right_mutate(C, keep).result)
    assert len(out) == len(parts)
    new = [c for c in out if not any(prod_equivalent(c, k)[0] for k in keep)]
    assert len(new) == 1
    assert not prod_equivalent(new[0], parts[drop])[0]


def test_compat_left_on_the_injective_cut():
    L = build_ladder(A3, ["3"])
    rep = compat_left(L, stalk(dual_regular(L.left)), stalk(regular(L.right)), parse_object("I_2", L.left))
    assert rep.holds is True
    assert _same(rep.glued, "S_2 + I_2 + I_3")


def test_compat_right_on_the_projective_cut():
    L = build_ladder(A3, ["1", "2"])
    rep = compat_right(L, stalk(regular(L.left)), stalk(dual_regular(L.right)), parse_object("I_2", L.right))
    assert rep.holds is True


def test_compat_right_is_silent_when_the_condition_fails():
    L = build_ladder(A3, ["1", "2"])
    rep = compat_right(L, stalk(regular(L.left)), stalk(dual_regular(L.right)), parse_object("I_1", L.right))
    assert rep.holds is None
    assert rep.message.startswith("hypothesis not satisfied, theorem silent")
    assert "k=[1]" in rep.message


def test_right_condition_check_direct():
    from cosilt.gluing import glue
    L = build_ladder(A3, ["1", "2"])
    G = glue(L, stalk(regular(L.left)), stalk(dual_regular(L.right)))
    good = right_mutate(stalk(dual_regular(L.right)), parse_object("I_2", L.right)).result
    bad = right_mutate(stalk(dual_regular(L.right)), parse_object("I_1", L.right)).result
    assert right_condition_check(L, G.V, good)[0]
    ok, why = right_condition_check(L, G.V, bad)
    assert not ok and "nonzero" in why


@pytest.mark.parametrize("cut", [["1", "2"], ["2", "3"], ["3"], ["1"]])
def test_compat_right_never_fails_outright(cut):
    L = build_ladder(A3, cut)
    for c1 in ("DA", "A"):
        for c2 in ("DA", "A", "DA[1]"):
            C1, C2 = parse_object(c1, L.left), parse_object(c2, L.right)
            for e in indecomposables(C2):
                assert compat_right(L, C1, C2, e).holds is not False
