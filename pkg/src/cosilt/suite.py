"""Bundled worked examples on A2 and A3, each with its expected outcome."""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .derived import Complex, derived_hom, derived_iso, minimalize, prod_equivalent, shift, stalk, summand_names
from .gluing import glue, nonzero_map_classes, verify_gluing
from .mutation import compat_left, compat_right, right_condition_check, right_mutate
from .quiver import Quiver
from .recollement import build_ladder
from .rep import Representation, dual_regular, regular
from .serial import parse_object


@dataclass
class SuiteItem:
    name: str
    checks: dict[str, bool] = dc_field(default_factory=dict)
    details: dict[str, object] = dc_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def _same(X: Complex, expr: str) -> bool:
    return prod_equivalent(X, parse_object(expr, X.quiver, X.field))[0]


def glue_a3_cut3(item: SuiteItem):
    A3 = Quiver.linear(3)
    L = build_ladder(A3, ["3"])
    G = glue(L, stalk(dual_regular(L.left)), stalk(regular(L.right)))
    item.checks["W = k^2"] = derived_iso(G.W, stalk(Representation(L.right, {"3": 2}, {}, L.field)))
    item.checks["V = 0"] = minimalize(G.V).is_zero()
    item.checks["U = I_1 + I_2"] = _same(G.U, "I_1 + I_2")
    item.checks["C = I_1 + I_2 + I_3"] = _same(G.C, "DA")
    item.checks["C cosilting"] = bool(G.certificate)
    item.checks["checks a-e"] = all(c.ok for c in verify_gluing(G))
    item.details.update(C=summand_names(G.C), U=summand_names(G.U), W=list(G.W.dimvec()))


def mutations_a2_a3(item: SuiteItem):
    A2, A3 = Quiver.linear(2), Quiver.linear(3)
    m1 = right_mutate(parse_object("DA", A2), parse_object("I_2", A2)).result
    m2 = right_mutate(parse_object("P_2 + I_2", A2), parse_object("P_2", A2)).result
    m3 = right_mutate(parse_object("DA", A3), [parse_object("I_2", A3), parse_object("I_3", A3)]).result
    item.checks["A2: D(B) at I_2 = P_2 + I_2"] = _same(m1, "P_2 + I_2")
    item.checks["A2: P_2 + I_2 at P_2 = I_1[-1] + P_2"] = _same(m2, "I_1[-1] + P_2")
    item.checks["A3: D(A) at I_2, I_3 = S_2 + I_2 + I_3"] = _same(m3, "S_2 + I_2 + I_3")
    item.details.update(first=summand_names(m1), second=summand_names(m2), third=summand_names(m3))


def glue_a3_cut12(item: SuiteItem):
    A3 = Quiver.linear(3)
    L = build_ladder(A3, ["1", "2"])
    k = stalk(regular(L.left))
    G = glue(L, k, stalk(dual_regular(L.right)))
    item.checks["C = D(A)"] = _same(G.C, "DA")
    tri = G.triangle
    objects = (_same(G.V, "I_2[-1]") and derived_iso(tri.Y, parse_object("S_3", A3))
               and _same(G.U, "P_1"))
    # each Hom space below is one-dimensional, so nonzero maps give an iso of triangles
    one_dim = (derived_hom(G.V, tri.Y).dim(0) == 1 and derived_hom(tri.Y, G.U).dim(0) == 1
               and derived_hom(G.U, shift(G.V, 1)).dim(0) == 1)
    item.checks["triangle I_2[-1] -> S_3 -> P_1 -> I_2"] = objects and one_dim and all(nonzero_map_classes(G))
    B = stalk(regular(L.right))
    G2 = glue(L, k, B)
    item.checks["glue(k, B) = I_3 + I_2 + S_2"] = _same(G2.C, "I_3 + I_2 + S_2")
    Bm = right_mutate(stalk(dual_regular(L.right)), parse_object("I_2", L.right)).result
    item.checks["right condition"] = right_condition_check(L, G.V, Bm)[0]
    rep = compat_right(L, k, stalk(dual_regular(L.right)), parse_object("I_2", L.right))
    item.checks["compat_right"] = rep.holds is True
    item.details.update(C=summand_names(G.C), V=summand_names(G.V), U=summand_names(G.U),
                        glued_with_B=summand_names(G2.C))


def compat_left_a3_cut3(item: SuiteItem):
    A3 = Quiver.linear(3)
    L = build_ladder(A3, ["3"])
    rep = compat_left(L, stalk(dual_regular(L.left)), stalk(regular(L.right)), parse_object("I_2", L.left))
    item.checks["compat_left"] = rep.holds is True
    item.checks["glue(B, k) = S_2 + I_2 + I_3"] = _same(rep.glued, "S_2 + I_2 + I_3")
    item.details.update(mutated=summand_names(rep.mutated), glued=summand_names(rep.glued))


EXAMPLES: dict[str, Callable[[SuiteItem], None]] = {
    "glue-A3-cut-3": glue_a3_cut3,
    "mutate-A2-A3": mutations_a2_a3,
    "glue-A3-cut-1,2": glue_a3_cut12,
    "compat-left-A3-cut-3": compat_left_a3_cut3,
}


def run_suite(names: list[str] | None = None) -> list[SuiteItem]:
    out = []
    for name in names or list(EXAMPLES):
        item = SuiteItem(name)
        t = time.perf_counter()
        EXAMPLES[name](item)
        item.seconds = time.perf_counter() - t
        out.append(item)
    return out
