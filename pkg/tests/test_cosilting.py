import random

from hypothesis import given, settings, strategies as st

from cosilt.cosilting import (LadderBounds, Window, cointermediacy_window, glued_window_bounds, is_cosilting,
                              measure_ladder_bounds)
from cosilt.derived import decompose_complex, derived_hom, direct_sum_complexes, shift, stalk
from cosilt.quiver import Quiver
from cosilt.recollement import build_ladder
from cosilt.rep import dual_regular, simple, standard_module
from cosilt.serial import parse_object

from gen import random_cosilting, random_quiver

A2, A3 = Quiver.linear(2), Quiver.linear(3)


def _random_object(rng, Q):
    parts = []
    for _ in range(rng.randint(1, len(Q.vertices) + 1)):
        M = standard_module(Q, rng.choice(Q.vertices), rng.choice("PIS"))
        parts.append(shift(stalk(M), rng.randint(-1, 1)))
    return direct_sum_complexes(parts, Q)


def test_dual_regular_is_cosilting():
    for n in range(1, 6):
        assert is_cosilting(stalk(dual_regular(Quiver.linear(n)))).status == "true"


def test_regular_module_is_cosilting_over_hereditary_algebras():
    assert is_cosilting(parse_object("A", A3)).status == "true"


def test_single_summand_is_rejected_with_reason():
    v = is_cosilting(parse_object("I_2", A2))
    assert v.status == "false"
    assert v.reason == "summand count 1 < 2"


def test_self_extension_is_reported():
    v = is_cosilting(parse_object("P_1 + S_2 + I_1", A3))
    assert v.status == "false"
    assert v.reason == "Hom(X, X[1]) has dimension 1"


def test_tiny_depth_bound_is_undecided():
    v = is_cosilting(parse_object("A", A3), depth_bound=0)
    assert v.status == "undecided"
    assert not v


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_agrees_with_counting_criterion(seed):
    # over a hereditary algebra, a basic orthogonal object with n summands is cosilting
    rng = random.Random(seed)
    Q = random_quiver(rng, 4)
    X = _random_object(rng, Q)
    counted = (len(decompose_complex(X)) == len(Q.vertices)
               and all(d == 0 for n, d in derived_hom(X, X).dims.items() if n > 0))
    assert (is_cosilting(X).status == "true") == counted


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_mutation_sequences_stay_cosilting(seed):
    rng = random.Random(seed)
    Q = Quiver.linear(rng.randint(2, 4))
    X = random_cosilting(rng, Q)
    assert is_cosilting(X).status == "true"
    assert len(decompose_complex(X)) == len(Q.vertices)


def test_known_windows():
    assert cointermediacy_window(parse_object("DA", A3)) == Window(0, 0)
    assert cointermediacy_window(parse_object("A", A3)) == Window(0, 1)
    assert cointermediacy_window(parse_object("I_1[-1] + P_2", A2)) == Window(0, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_window_is_tight_and_shifts(seed):
    rng = random.Random(seed)
    Q = Quiver.linear(rng.randint(2, 4))
    X = random_cosilting(rng, Q)
    w = cointermediacy_window(X)
    k = rng.randint(-2, 2)
    assert cointermediacy_window(shift(X, k)) == Window(w.lower - k, w.upper - k)
    # S_v[-upper] sits in the coaisle; some S_v[-(upper - 1)] does not
    def in_coaisle(v, i):
        h = derived_hom(shift(stalk(simple(Q, v)), -i), X)
        return all(d == 0 for n, d in h.dims.items() if n > 0)
    assert all(in_coaisle(v, w.upper) for v in Q.vertices)
    assert not all(in_coaisle(v, w.upper - 1) for v in Q.vertices)


def test_window_containment():
    assert Window(-1, 3).contains(Window(0, 1))
    assert not Window(0, 1).contains(Window(-1, 1))
    assert str(Window(-1, 2)) == "[-1, 2]"


def test_ladder_bounds_of_the_injective_cut():
    L = build_ladder(A3, ["3"])
    b = measure_ladder_bounds(L)
    # i_* of the left regular module contains S_2, resolved by P_3 -> P_2
    assert b == LadderBounds((0, 0), (-1, 0), (0, 0), (0, 0))
    w = glued_window_bounds(Window(0, 0), Window(0, 0), b)
    assert w.contains(Window(0, 0))
