import random

import pytest
from hypothesis import given, settings, strategies as st

from cosilt.derived import derived_hom, derived_iso, minimalize, shift, stalk
from cosilt.linalg import QQ, Field
from cosilt.quiver import Quiver
from cosilt.recollement import (FUNCTORS, CutNotClosed, WrongSourceAlgebra, apply_functor, build_ladder,
                                canonical_triangles, check_axioms, make_cut)
from cosilt.rep import Representation, dual_regular, injective, projective, simple

from gen import random_complex

A3 = Quiver.linear(3)
LADDERS = {
    "A3 cut 3": (A3, ["3"]),
    "A3 cut 1,2": (A3, ["1", "2"]),
    "A4 cut 2,3,4": (Quiver.linear(4), ["2", "3", "4"]),
    "D4-ish cut 1": (Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")], "Star"),
                     ["1"]),
}


@pytest.fixture(scope="module", params=sorted(LADDERS))
def ladder(request):
    Q, cut = LADDERS[request.param]
    return build_ladder(Q, cut)


def test_cut_two_on_a3_is_rejected():
    with pytest.raises(CutNotClosed):
        build_ladder(A3, ["2"])


def test_closure_detection():
    assert make_cut(A3, ["3"]).closure == "successor"
    assert make_cut(A3, ["1", "2"]).closure == "predecessor"


def test_unknown_and_empty_cuts():
    with pytest.raises((CutNotClosed, ValueError)):
        make_cut(A3, ["7"])
    with pytest.raises((CutNotClosed, ValueError)):
        make_cut(A3, [])


def test_algebras_of_the_ladder(ladder):
    cut = set(ladder.cut.cut)
    assert set(ladder.right.vertices) == cut
    assert set(ladder.left.vertices) == set(ladder.middle.vertices) - cut


def test_standard_values(ladder):
    # j_! keeps projectives, j_* keeps injectives, i^* and i^! do the same on the left
    L, Q = ladder, ladder.middle
    for s in L.right.vertices:
        assert derived_iso(L.j_lower_shriek(stalk(projective(L.right, s))), stalk(projective(Q, s)))
        assert derived_iso(L.j_lower(stalk(injective(L.right, s))), stalk(injective(Q, s)))
    for t in L.left.vertices:
        assert derived_iso(L.i_upper(stalk(projective(Q, t))), stalk(projective(L.left, t)))
        assert derived_iso(L.i_shriek(stalk(injective(Q, t))), stalk(injective(L.left, t)))
        assert derived_iso(L.i_lower(stalk(simple(L.left, t))), stalk(simple(Q, t)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_axioms_on_random_inputs(ladder, seed):
    rng = random.Random(seed)
    L = ladder
    fails = check_axioms(L, random_complex(rng, L.left, 2), random_complex(rng, L.right, 2),
                         random_complex(rng, L.middle, 2))
    assert fails == []


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_triangles(ladder, seed):
    rng = random.Random(seed)
    T = random_complex(rng, ladder.middle, 2)
    first, second = canonical_triangles(ladder, T)
    assert first.check() and second.check()
    assert first.notes["outer_terms_match"] and second.notes["outer_terms_match"]
    assert derived_iso(first.Y, T) and derived_iso(second.Y, T)


def test_j_sharp_on_the_injective_cut():
    # cut {3}: j^# = RHom(I_3, -), and i_*(D(B)) = I_1 + I_2 has Hom(I_3, -) of dimension 2
    L = build_ladder(A3, ["3"])
    W = apply_functor(L, "j^#", L.i_lower(stalk(dual_regular(L.left))))
    assert derived_iso(W, stalk(Representation(L.right, {"3": 2}, {}, QQ)))


def test_j_sharp_is_right_adjoint_on_the_projective_cut():
    L = build_ladder(A3, ["1", "2"])
    for v in A3.vertices:
        X = stalk(simple(A3, v))
        for Z in (stalk(simple(L.right, s)) for s in L.right.vertices):
            a, b = derived_hom(L.j_lower(Z), X), derived_hom(Z, L.j_sharp(X))
            assert {n: d for n, d in a.nonzero().items()} == b.nonzero()


def test_wrong_source_algebra(ladder):
    X = stalk(simple(ladder.middle, ladder.middle.vertices[0]))
    with pytest.raises(WrongSourceAlgebra):
        apply_functor(ladder, "j_*", X)


def test_unknown_functor(ladder):
    with pytest.raises(KeyError):
        apply_functor(ladder, "k_*", stalk(simple(ladder.middle, "1")))


def test_all_functors_apply(ladder):
    for name in FUNCTORS:
        src = ladder.source_of(name)
        out = apply_functor(ladder, name, shift(stalk(projective(src, src.vertices[0])), 1))
        assert out.quiver == ladder.target_of(name)


def test_ladder_over_finite_field():
    L = build_ladder(A3, ["3"], Field.prime(3))
    assert L.field == Field.prime(3)
    assert minimalize(L.j_upper(L.i_lower(stalk(simple(L.left, "1", L.field))))).is_zero()
