"""Minimal approximations by shifts of a fixed family of complexes of projectives.

A right approximation of Z by the family G is a map E -> Z from a finite sum
of shifts G_i[m] through which every map G_i[m] -> Z factors.  It is built
from bases of Hom(G_i, Z[n]) and then pruned: a basis map is dropped when it
is, modulo homotopy, a combination of the other kept maps precomposed with
maps between the sources.  Left approximations are right approximations over
the opposite quiver.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .linalg import Span
from .pathcx import (HomComplex, PathChainMap, PathComplex, cocone, cocycle_map, direct_sum_pc, hom,
                     minimize)


@dataclass
class Candidate:
    index: int      # which generator
    degree: int     # the map is G_index -> Z[degree], i.e. G_index[-degree] -> Z
    vector: list
    chain: PathChainMap


@dataclass
class Approximation:
    """phi: E -> Z (right) or phi: Z -> E (left) with E the sum of the chosen shifts."""

    E: PathComplex
    phi: PathChainMap
    chosen: list[tuple[int, int]]   # (generator index, shift) per summand of E

    @property
    def is_zero(self) -> bool:
        return self.E.is_zero()


class _HomCache:
    def __init__(self, gens: Sequence[PathComplex]):
        self.gens = gens
        self._between: dict[tuple[int, int], HomComplex] = {}

    def between(self, i: int, k: int) -> HomComplex:
        if (i, k) not in self._between:
            self._between[(i, k)] = hom(self.gens[i], self.gens[k])
        return self._between[(i, k)]


def _removable(j: int, kept: list[int], cands: list[Candidate], homs: dict[int, HomComplex],
               cache: _HomCache, Z: PathComplex) -> bool:
    cj = cands[j]
    hc = homs[cj.index]
    coh = hc.cohomology(cj.degree)
    span = Span(hc.P.field, coh.dim)
    for k in kept:
        if k == j:
            continue
        ck = cands[k]
        d = cj.degree - ck.degree
        between = cache.between(cj.index, ck.index)
        lo, hi = between.window
        if not lo <= d <= hi:
            continue
        G = cache.gens[ck.index]
        moved = ck.chain.shift(d)
        for vec in between.cohomology(d).basis:
            alpha = cocycle_map(between, vec, d, G)
            comps = (moved @ alpha).comps
            co = coh.coordinates(hc.from_path_components(comps, cj.degree, Z))
            if co is not None:
                span.add(co)
    target = coh.coordinates(cj.vector)
    return span.contains(target)


def right_approximation(Z: PathComplex, gens: Sequence[PathComplex],
                        allowed: Callable[[int], bool] | None = None,
                        cache: _HomCache | None = None) -> Approximation:
    """Minimal right approximation of Z by shifts of ``gens``.

    ``allowed(n)`` restricts to maps G_i -> Z[n]; by default every n is used.
    """
    cache = cache or _HomCache(gens)
    homs: dict[int, HomComplex] = {}
    cands: list[Candidate] = []
    for i, G in enumerate(gens):
        hc = hom(G, Z)
        homs[i] = hc
        lo, hi = hc.window
        for n in range(lo, hi + 1):
            if allowed is not None and not allowed(n):
                continue
            for vec in hc.cohomology(n).basis:
                cands.append(Candidate(i, n, vec, cocycle_map(hc, vec, n, Z)))
    kept = list(range(len(cands)))
    for j in range(len(cands)):
        if len(kept) > 1 and _removable(j, kept, cands, homs, cache, Z):
            kept.remove(j)
    parts = [gens[cands[j].index].shift(-cands[j].degree) for j in kept]
    E, _, projs = direct_sum_pc(parts, Z.quiver, Z.field)
    phi = PathChainMap(E, Z, {}, check=False)
    for j, pr in zip(kept, projs):
        c = cands[j]
        piece = c.chain.shift(-c.degree)
        phi = phi + PathChainMap(E, Z, (piece @ pr).comps, check=False)
    return Approximation(E, phi, [(cands[j].index, -cands[j].degree) for j in kept])


def left_approximation(Z: PathComplex, gens: Sequence[PathComplex],
                       allowed: Callable[[int], bool] | None = None) -> Approximation:
    """Minimal left approximation Z -> E by shifts of ``gens``.

    ``allowed(k)`` restricts to maps Z -> G_i[k].
    """
    right = right_approximation(Z.dual(), [g.dual() for g in gens], allowed)
    phi = right.phi.dual()
    E = right.E.dual()
    return Approximation(E, phi.with_ends(Z, E), [(i, -m) for i, m in right.chosen])


@dataclass
class TowerStep:
    depth: int
    size: int
    chosen: list[tuple[int, int]]


def resolve_by(Z: PathComplex, gens: Sequence[PathComplex], max_depth: int) -> tuple[bool, list[TowerStep]]:
    """Iterate cocones of minimal right approximations until Z becomes 0.

    Returns (reached zero, trace).  Reaching zero shows Z lies in the thick
    closure of ``gens``.
    """
    cache = _HomCache(gens)
    trace = []
    cur = minimize(Z, track=False)[0]
    for depth in range(max_depth + 1):
        if cur.is_zero():
            return True, trace
        apx = right_approximation(cur, gens, cache=cache)
        trace.append(TowerStep(depth, cur.size, apx.chosen))
        if apx.is_zero:
            return False, trace
        K, _ = cocone(apx.phi)
        cur = minimize(K, track=False)[0]
    return cur.is_zero(), trace
