"""Seeded random generators shared by the property and acceptance tests."""
from __future__ import annotations

import random

from cosilt.derived import Complex, cone, derived_hom, direct_sum_complexes, shift, stalk
from cosilt.linalg import QQ, Matrix
from cosilt.quiver import Quiver
from cosilt.rep import RepMorphism, Representation, conjugate, dual_regular, hom_space


def random_quiver(rng: random.Random, max_vertices: int = 5, max_arrows: int | None = None) -> Quiver:
    n = rng.randint(1, max_vertices)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rng.shuffle(pairs)
    k = rng.randint(0, min(len(pairs), max_arrows if max_arrows is not None else n))
    arrows = [("b%d" % t, str(i), str(j)) for t, (i, j) in enumerate(sorted(pairs[:k]))]
    # relabel so the vertex order is not always the topological one
    return Quiver([str(i) for i in range(1, n + 1)], arrows, "R%d" % n)


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2, field=QQ) -> Matrix:
    return Matrix(field, rows, cols, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng: random.Random, n: int, field=QQ) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, -3, 3, field)
        if m.is_invertible():
            return m


def random_rep(rng: random.Random, q: Quiver, max_dim: int = 4, field=QQ) -> Representation:
    dims = {v: rng.randint(0, max_dim) for v in q.vertices}
    maps = {a.name: random_matrix(rng, dims[a.target], dims[a.source], field=field) for a in q.arrows}
    return Representation(q, dims, maps, field)


def random_morphism(rng: random.Random, M: Representation, N: Representation) -> RepMorphism:
    basis = hom_space(M, N)
    out = RepMorphism.zero(M, N)
    for b in basis:
        c = rng.randint(-2, 2)
        if c:
            out = out + b.scale(c)
    return out


def two_term(rng: random.Random, q: Quiver, max_dim: int = 3) -> Complex:
    M, N = random_rep(rng, q, max_dim), random_rep(rng, q, max_dim)
    f = random_morphism(rng, M, N)
    return Complex(q, {0: M, 1: N}, {0: f}, M.field)


def random_complex(rng: random.Random, q: Quiver, max_dim: int = 3) -> Complex:
    """Shifted stalks, two-term complexes, or cones of random maps between them."""
    kind = rng.randint(0, 2)
    if kind == 0:
        return shift(stalk(random_rep(rng, q, max_dim)), rng.randint(-1, 1))
    X = shift(two_term(rng, q, max_dim), rng.randint(-1, 1))
    if kind == 1:
        return X
    Y = shift(two_term(rng, q, max_dim), rng.randint(-1, 1))
    w = derived_hom(X, Y)
    maps = w.basis(0)
    if not maps:
        return direct_sum_complexes([X, Y], q, X.field)
    f = maps[0]
    for g in maps[1:]:
        if rng.random() < 0.5:
            f = f + g
    return cone(f).Z


def conjugate_complex(rng: random.Random, X: Complex) -> Complex:
    """The same complex after a random change of basis in every term."""
    changes = {n: {v: random_invertible(rng, t.dims[v], X.field) for v in X.quiver.vertices}
               for n, t in X.terms.items()}
    terms = {n: conjugate(t, changes[n]) for n, t in X.terms.items()}
    diffs = {}
    for n, d in X.diffs.items():
        blocks = {v: changes[n + 1][v] @ d.blocks[v] @ changes[n][v].inverse() for v in X.quiver.vertices}
        diffs[n] = RepMorphism(terms[n], terms[n + 1], blocks)
    return Complex(X.quiver, terms, diffs, X.field)


def random_cosilting(rng: random.Random, q: Quiver, steps: int = 2) -> Complex:
    """A shift of D(A) followed by a few random right mutations."""
    from cosilt.derived import decompose_complex
    from cosilt.mutation import MutationNotCosilting, right_mutate
    X = shift(stalk(dual_regular(q)), rng.randint(-1, 1))
    for _ in range(rng.randint(0, steps)):
        parts = [c for c, _ in decompose_complex(X)]
        keep = [p for p in parts if rng.random() < 0.5]
        if len(keep) == len(parts):
            keep = keep[:-1]
        try:
            X = right_mutate(X, keep).result
        except MutationNotCosilting:
            break
    return X
