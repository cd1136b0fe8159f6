"""Krull-Schmidt decomposition of quiver representations.

Splitting uses Fitting's lemma: if an endomorphism x has a minimal polynomial
with two coprime factors q1 * q2, then M = ker q1(x) + ker q2(x) as
representations.  A summand is certified indecomposable when its endomorphism
algebra modulo the radical is one-dimensional, or is a field generated by a
single element.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .linalg import Field, Matrix, Span, block_diagonal, kernel
from .rep import (RepMorphism, Representation, direct_sum, hom_space, stack_morphisms_to_sum,
                  subrepresentation)


class FieldTooSmall(RuntimeError):
    """Raised when indecomposability cannot be certified over the chosen field."""


_T = sympy.Symbol("t")


def _poly(field: Field, coeffs: Sequence) -> sympy.Poly:
    """Polynomial from coefficients listed from the constant term upwards."""
    if field.kind == "Q":
        cs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
        return sympy.Poly(cs, _T, domain=sympy.QQ)
    return sympy.Poly([int(c.v) for c in reversed(coeffs)], _T, modulus=field.p)


def _coeffs(field: Field, poly: sympy.Poly) -> list:
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.kind == "Q":
            c = sympy.Rational(c)
            out.append(Fraction(int(c.p), int(c.q)))
        else:
            out.append(field(int(c)))
    return out


def _evaluate(field: Field, poly: sympy.Poly, X: Matrix) -> Matrix:
    n = X.rows
    out = Matrix.zeros(field, n, n)
    for c in reversed(_coeffs(field, poly)):
        out = out @ X + Matrix.identity(field, n).scale(c)
    return out


def minimal_polynomial(X: Matrix) -> sympy.Poly:
    """Minimal polynomial of a square matrix, via the first dependent power."""
    f = X.field
    n = X.rows
    span = Span(f, n * n)
    power = Matrix.identity(f, n)
    k = 0
    while span.add(power.entries()):
        power = power @ X
        k += 1
    coords = span.coordinates(power.entries())
    return _poly(f, [-c for c in coords] + [f.one])


def _as_matrix(x: RepMorphism) -> Matrix:
    vs = x.source.quiver.vertices
    return block_diagonal(x.source.field, [x.blocks[v] for v in vs])


def _factor(field: Field, poly: sympy.Poly) -> list[tuple[sympy.Poly, int]]:
    return poly.factor_list()[1]


def _fitting_split(M: Representation, x: RepMorphism):
    """Split M along the primary decomposition of x, or return None."""
    f = M.field
    factors = _factor(f, minimal_polynomial(_as_matrix(x)))
    if len(factors) < 2:
        return None
    g, e = factors[0]
    q1 = g ** e
    q2 = sympy.prod([h ** k for h, k in factors[1:]])
    parts = []
    for q in (q1, q2):
        bases = {}
        for v in M.quiver.vertices:
            d = M.dims[v]
            if d == 0:
                bases[v] = Matrix.zeros(f, 0, 0)
                continue
            kern = kernel(_evaluate(f, q, x.blocks[v]))
            bases[v] = Matrix.from_columns(f, kern, d)
        parts.append(subrepresentation(M, bases))
    return parts


def _trace(x: RepMorphism):
    f = x.source.field
    total = f.zero
    for b in x.blocks.values():
        for i in range(b.rows):
            total = total + b[i, i]
    return total


def _radical(M: Representation, E: list[RepMorphism]) -> list[list] | None:
    """Coefficient vectors spanning rad End(M), from the trace form.

    The trace form detects the radical only in characteristic 0 or p > dim M;
    otherwise None is returned.
    """
    f = M.field
    if f.characteristic and f.characteristic <= M.total_dim:
        return None
    n = len(E)
    gram = Matrix._raw(f, n, n, [[_trace(a @ b) for b in E] for a in E])
    return kernel(gram)


def _certify_local(M: Representation, E: list[RepMorphism], rad: list[list] | None, candidates) -> bool:
    """True if End(M) is local.  Raises FieldTooSmall when no certificate is found."""
    f = M.field
    n = len(E)
    if n == 1:
        return True
    if rad is None:
        raise FieldTooSmall("cannot certify an indecomposable summand of dimension %d over %s; "
                            "retry over Q or a larger prime" % (M.total_dim, f))
    quotient_dim = n - len(rad)
    if quotient_dim == 1:
        return True
    vecs = [e.vector() for e in E]
    for x in candidates:
        factors = _factor(f, minimal_polynomial(_as_matrix(x)))
        if len(factors) != 1 or factors[0][0].degree() != quotient_dim:
            continue
        # 1, x, ..., x^(d-1) must stay independent modulo the radical
        span = Span(f, len(vecs[0]))
        for r in rad:
            span.add([sum((c * vv[i] for c, vv in zip(r, vecs)), f.zero) for i in range(len(vecs[0]))])
        power = M.identity()
        ok = True
        for _ in range(quotient_dim):
            if not span.add(power.vector()):
                ok = False
                break
            power = x @ power
        if ok:
            return True
    raise FieldTooSmall("endomorphism algebra of a summand has a semisimple quotient of dimension %d "
                        "that could not be split or certified as a field over %s" % (quotient_dim, f))


def _candidates(E: list[RepMorphism], rng: random.Random, tries: int):
    yield from E
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            yield E[i] + E[j]
    for i in range(len(E)):
        for j in range(len(E)):
            yield E[i] @ E[j]
    for _ in range(tries):
        x = None
        for e in E:
            c = rng.randint(-3, 3)
            if c:
                x = e.scale(c) if x is None else x + e.scale(c)
        if x is not None:
            yield x


@dataclass
class Summand:
    """An indecomposable summand together with its inclusion into the parent."""

    module: Representation
    inclusion: RepMorphism


def split_module(M: Representation, seed: int = 0, tries: int = 30) -> list[Summand]:
    """Indecomposable summands of M with inclusions whose sum is an isomorphism."""
    if M.total_dim == 0:
        return []
    rng = random.Random(seed)
    E = hom_space(M, M)
    if len(E) > 1:
        # basis elements are cheap and split large multiplicity blocks quickly
        out = _split_along(M, E, seed, tries)
        if out is not None:
            return out
        rad = _radical(M, E)
        if rad is not None and len(E) - len(rad) == 1:
            return [Summand(M, M.identity())]
        out = _split_along(M, _candidates(E, rng, tries), seed, tries)
        if out is not None:
            return out
        _certify_local(M, E, rad, _candidates(E, random.Random(seed), tries))
    return [Summand(M, M.identity())]


def _split_along(M: Representation, xs, seed: int, tries: int) -> list[Summand] | None:
    for x in xs:
        parts = _fitting_split(M, x)
        if parts is None:
            continue
        out = []
        for sub, inc in parts:
            for s in split_module(sub, seed, tries):
                out.append(Summand(s.module, inc @ s.inclusion))
        return out
    return None


def _iso_indecomposables(X: Representation, Y: Representation) -> RepMorphism | None:
    """For indecomposable X, Y: an isomorphism X -> Y or None.

    End(X) is local, so an isomorphism exists iff g o f is invertible for some
    basis elements f of Hom(X, Y) and g of Hom(Y, X).
    """
    if X.dimvec != Y.dimvec:
        return None
    fs = hom_space(X, Y)
    if not fs:
        return None
    gs = hom_space(Y, X)
    for f in fs:
        if f.is_iso():
            return f
    for f in fs:
        for g in gs:
            if (g @ f).is_iso():
                return f
    return None


def decompose_module(M: Representation, seed: int = 0) -> list[tuple[Representation, int]]:
    """Iso classes of indecomposable summands of M with multiplicities."""
    classes: list[list] = []
    for s in split_module(M, seed):
        for entry in classes:
            if _iso_indecomposables(entry[0], s.module) is not None:
                entry[1] += 1
                break
        else:
            classes.append([s.module, 1])
    return [(m, k) for m, k in classes]


def iso_modules(M: Representation, N: Representation, seed: int = 0) -> tuple[bool, RepMorphism | None]:
    """Decide M = N; on success also return an explicit isomorphism M -> N."""
    if M.quiver != N.quiver or M.field != N.field:
        raise ValueError("iso test between representations over different algebras")
    if M.dimvec != N.dimvec:
        return False, None
    if M == N:
        return True, M.identity()
    ms, ns = split_module(M, seed), split_module(N, seed)
    if len(ms) != len(ns):
        return False, None
    matched: list[tuple[Summand, Summand, RepMorphism]] = []
    free = list(ns)
    for s in ms:
        for t in free:
            phi = _iso_indecomposables(s.module, t.module)
            if phi is not None:
                matched.append((s, t, phi))
                free.remove(t)
                break
        else:
            return False, None
    # M <- sum of summands (iso) -> sum of matched summands -> N
    src = direct_sum([s.module for s, _, _ in matched])
    into_m = stack_morphisms_to_sum([s.inclusion for s, _, _ in matched], src, M)
    into_n = stack_morphisms_to_sum([t.inclusion @ phi for _, t, phi in matched], src, N)
    witness = into_n @ into_m.inverse()
    return True, RepMorphism(M, N, witness.blocks)
