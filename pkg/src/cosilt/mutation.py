"""Right mutation of cosilting complexes and the two compatibility checks with gluing.

Work happens on projective path data (nu^-1 of the injective models), where
Prod(E)-precovers become minimal right approximations by the summands of E
without shifts.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .approx import right_approximation
from .cosilting import CosiltingVerdict, is_cosilting
from .derived import (Complex, Triangle, coresolve, decompose_complex, derived_hom, direct_sum_complexes,
                      minimalize, prod_equivalent, shift, summand_names, _same_indecomposable)
from .gluing import glue, glue_triangle
from .pathcx import cocone, cone, minimize, realize_map
from .recollement import LadderContext


class MutationNotCosilting(RuntimeError):
    """The mutated complex failed the cosilting check."""


class NotASummand(ValueError):
    """A member of the mutation set is not a summand of the complex."""


@dataclass
class PrecoverTriangle:
    """Z -> E0 -> Y -> Z[1] with E0 -> Y a minimal Prod(E)-precover."""

    Y: Complex
    E0: Complex
    Z: Complex
    triangle: Triangle


@dataclass
class MutationSpec:
    complex: Complex
    keep: list[Complex]       # indecomposable summands spanning E


@dataclass
class MutationResult:
    result: Complex
    precovers: list[PrecoverTriangle]
    certificate: CosiltingVerdict
    kept: list[Complex] = dc_field(default_factory=list)


def precover(Y: Complex, E: Sequence[Complex]) -> PrecoverTriangle:
    """Minimal Prod(E)-precover of Y and its cocone."""
    Yp = coresolve(Y).data
    gens = [coresolve(e).data for e in E]
    apx = right_approximation(Yp, gens, allowed=lambda n: n == 0)
    C, into, _ = cone(apx.phi)
    K, to = cocone(apx.phi)
    Km, fwd, back = minimize(K)
    h = fwd.shift(1) @ into
    tri = Triangle(Km.inj, apx.E.inj, Yp.inj, realize_map(to @ back, injective=True),
                   realize_map(apx.phi, injective=True), realize_map(h, injective=True))
    return PrecoverTriangle(Yp.inj, apx.E.inj, Km.inj, tri)


def _match(parts: Sequence[Complex], X: Complex) -> int | None:
    for i, p in enumerate(parts):
        if _same_indecomposable(p, X):
            return i
    return None


def indecomposables(X: Complex) -> list[Complex]:
    return [c for c, _ in decompose_complex(X)]


def right_mutate(C: Complex, E: Sequence[Complex] | Complex, certify: bool = True) -> MutationResult:
    """Right mutation of C at the summands E (a list of summands or their sum)."""
    parts = indecomposables(C)
    keep_parts = indecomposables(E) if isinstance(E, Complex) else [p for e in E for p in indecomposables(e)]
    keep_idx = set()
    for e in keep_parts:
        i = _match(parts, e)
        if i is None:
            raise NotASummand("%s is not a summand of the complex" % summand_names(e)[0])
        keep_idx.add(i)
    kept = [parts[i] for i in sorted(keep_idx)]
    pcs = [precover(parts[i], kept) for i in range(len(parts)) if i not in keep_idx]
    pieces = kept + [pc.Z for pc in pcs if not pc.Z.is_zero()]
    result = minimalize(direct_sum_complexes(pieces, C.quiver, C.field))
    cert = is_cosilting(result) if certify else None
    if certify and not cert:
        raise MutationNotCosilting("mutated complex is not cosilting (%s): %s" % (cert.status, cert.reason))
    return MutationResult(result, pcs, cert, kept)


def right_condition_check(L: LadderContext, V: Complex, C2_mut: Complex) -> tuple[bool, str]:
    """i^!(V[1]) = 0 and Hom(j^*(V[1]), C2'[k]) = 0 for all k > 0."""
    V1 = shift(V, 1)
    if not minimalize(L.i_shriek(V1)).is_zero():
        return False, "i^!(V[1]) is nonzero"
    hw = derived_hom(L.j_upper(V1), C2_mut)
    bad = sorted(k for k, d in hw.dims.items() if k > 0 and d)
    if bad:
        return False, "Hom(j^*(V[1]), C2'[k]) nonzero for k=%s" % bad
    return True, "condition holds"


@dataclass
class CompatReport:
    holds: bool | None          # None when the hypothesis fails
    message: str
    mutated: Complex | None = None
    glued: Complex | None = None
    matching: list = dc_field(default_factory=list)


def compat_left(L: LadderContext, C1: Complex, C2: Complex, X: Complex | Sequence[Complex]) -> CompatReport:
    """Compare mutating the glued complex at j_*(C2) + U_X with gluing the mutation of C1 at X."""
    Xs = [X] if isinstance(X, Complex) else list(X)
    XX = direct_sum_complexes(Xs, L.left, L.field)
    G = glue(L, C1, C2)
    C1m = right_mutate(C1, Xs).result
    G2 = glue(L, C1m, C2)
    UX = glue_triangle(L, XX, C2).U
    E = [L.j_lower(C2)] + ([UX] if not minimalize(UX).is_zero() else [])
    M = right_mutate(G.C, E).result
    ok, matching = prod_equivalent(M, G2.C)
    return CompatReport(ok, "mutation commutes with gluing" if ok else "Prod classes differ", M, G2.C, matching)


def compat_right(L: LadderContext, C1: Complex, C2: Complex, E2: Complex | Sequence[Complex]) -> CompatReport:
    """Compare mutating the glued complex at j_*(E2) + U with gluing C1 and the mutation of C2 at E2."""
    Es = [E2] if isinstance(E2, Complex) else list(E2)
    C2m = right_mutate(C2, Es).result
    G = glue(L, C1, C2)
    ok, why = right_condition_check(L, G.V, C2m)
    if not ok:
        return CompatReport(None, "hypothesis not satisfied, theorem silent (%s)" % why)
    E = [L.j_lower(e) for e in Es] + ([G.U] if not minimalize(G.U).is_zero() else [])
    M = right_mutate(G.C, E).result
    G2 = glue(L, C1, C2m)
    ok, matching = prod_equivalent(M, G2.C)
    return CompatReport(ok, "mutation commutes with gluing" if ok else "Prod classes differ", M, G2.C, matching)
