import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cosilt.linalg import QQ, Field, Matrix
from cosilt.quiver import Quiver, QuiverError
from cosilt.rep import (RepError, Representation, direct_sum, dualize, dual_regular, hom_space, injective,
                        projective, regular, simple)

from gen import random_quiver, random_rep


def _hom_dim_oracle(M: Representation, N: Representation) -> int:
    """dim Hom(M, N) from a sympy system of commuting-square equations."""
    Q = M.quiver
    syms = {v: sympy.Matrix(N.dims[v], M.dims[v], lambda i, j: sympy.Symbol("x_%s_%d_%d" % (v, i, j)))
            for v in Q.vertices}
    unknowns = [s for v in Q.vertices for s in syms[v]]
    if not unknowns:
        return 0

    def sm(m: Matrix):
        return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for r in m.data for x in r])
    eqs = []
    for a in Q.arrows:
        eqs.extend(sm(N.maps[a.name]) * syms[a.source] - syms[a.target] * sm(M.maps[a.name]))
    if not eqs:
        return len(unknowns)
    A, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    return len(unknowns) - A.rank()


def test_linear_quiver_shape():
    A3 = Quiver.linear(3)
    assert A3.vertices == ("1", "2", "3")
    assert [len(A3.paths("1", w)) for w in A3.vertices] == [1, 1, 1]
    assert A3.paths("3", "1") == ()


def test_cycle_rejected():
    with pytest.raises(QuiverError):
        Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(QuiverError):
        Quiver(["1"], [("a", "1", "2")])


def test_closure_sets():
    A4 = Quiver.linear(4)
    assert A4.predecessors(["2"]) == {"1", "2"}
    assert A4.successors(["3"]) == {"3", "4"}


def test_standard_modules_on_a3():
    A3 = Quiver.linear(3)
    assert projective(A3, "1").dimvec == (1, 1, 1)
    assert projective(A3, "3").dimvec == (0, 0, 1)
    assert injective(A3, "1").dimvec == (1, 0, 0)
    assert injective(A3, "3").dimvec == (1, 1, 1)
    assert regular(A3).dimvec == (1, 2, 3)
    assert dual_regular(A3).dimvec == (3, 2, 1)


def test_bad_representation_rejected():
    A2 = Quiver.linear(2)
    with pytest.raises(RepError):
        Representation(A2, {"1": 1, "2": 1}, {"a1": Matrix.zeros(QQ, 2, 1)})
    with pytest.raises(RepError):
        Representation(A2, {"9": 1})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_dimension_matches_independent_system(seed):
    rng = random.Random(seed)
    Q = random_quiver(rng, 4)
    M, N = random_rep(rng, Q, 3), random_rep(rng, Q, 3)
    assert len(hom_space(M, N)) == _hom_dim_oracle(M, N)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_yoneda_dimensions(seed):
    # Hom(P_v, M) = M_v and Hom(M, I_v) = M_v
    rng = random.Random(seed)
    Q = random_quiver(rng, 4)
    M = random_rep(rng, Q, 3)
    for v in Q.vertices:
        assert len(hom_space(projective(Q, v), M)) == M.dims[v]
        assert len(hom_space(M, injective(Q, v))) == M.dims[v]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_double_dual_is_identity(seed):
    rng = random.Random(seed)
    Q = random_quiver(rng, 4)
    M = random_rep(rng, Q, 3)
    DD = dualize(dualize(M))
    assert DD.quiver == Q
    assert DD.dims == M.dims
    assert all(DD.maps[a].data == M.maps[a].data for a in M.maps)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_additive_in_both_arguments(seed):
    rng = random.Random(seed)
    Q = random_quiver(rng, 3)
    M, N, K = (random_rep(rng, Q, 2) for _ in range(3))
    lhs = len(hom_space(direct_sum([M, N]), K))
    assert lhs == len(hom_space(M, K)) + len(hom_space(N, K))


def test_hom_over_finite_field():
    F5 = Field.prime(5)
    A2 = Quiver.linear(2)
    assert len(hom_space(projective(A2, "1", F5), simple(A2, "1", F5))) == 1
    assert len(hom_space(simple(A2, "1", F5), projective(A2, "1", F5))) == 0
