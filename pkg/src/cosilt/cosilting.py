"""Cosilting verification and cointermediacy windows.

X is cosilting when Hom(X, X[n]) = 0 for n > 0 and X cogenerates: over a
finite-dimensional algebra this means D(X) generates K^b(proj A^op) as a
thick subcategory.  Generation is certified by resolving every indecomposable
projective of the opposite algebra by minimal approximations with shifts of
the summands of D(X).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .approx import TowerStep, resolve_by
from .derived import (Complex, HomWindow, cohomologies, decompose_complex, derived_hom, dualize_complex,
                      resolve, stalk, summand_names)
from .pathcx import stalk as path_stalk
from .rep import regular, simple


@dataclass
class CosiltingCertificate:
    summands: list[str]
    orthogonality: dict[int, int]
    towers: dict[str, list[TowerStep]] = dc_field(default_factory=dict)
    depth_bound: int = 0


@dataclass
class CosiltingVerdict:
    status: str            # "true", "false" or "undecided"
    reason: str
    certificate: CosiltingCertificate

    def __bool__(self) -> bool:
        return self.status == "true"


def orthogonality_window(X: Complex) -> HomWindow:
    """dim Hom(X, X[n]) over the complete window."""
    return derived_hom(X, X)


def _width(X: Complex) -> int:
    degs = X.support()
    return (max(degs) - min(degs) + 1) if degs else 0


def is_cosilting(X: Complex, depth_bound: int | None = None) -> CosiltingVerdict:
    n_vertices = len(X.quiver.vertices)
    parts = [c for c, _ in decompose_complex(X)]
    names = [summand_names(p)[0] for p in parts]
    if depth_bound is None:
        depth_bound = 4 * (n_vertices + _width(X))
    cert = CosiltingCertificate(names, {}, depth_bound=depth_bound)
    if len(parts) < n_vertices:
        return CosiltingVerdict("false", "summand count %d < %d" % (len(parts), n_vertices), cert)
    duals = [resolve(dualize_complex(c)).data for c in parts]
    orth = orthogonality_window(X)
    cert.orthogonality = {n: d for n, d in orth.dims.items()}
    bad = {n: d for n, d in orth.dims.items() if n > 0 and d}
    if bad:
        n = min(bad)
        return CosiltingVerdict("false", "Hom(X, X[%d]) has dimension %d" % (n, bad[n]), cert)
    op = duals[0].quiver
    for v in op.vertices:
        ok, trace = resolve_by(path_stalk(op, X.field, [v]), duals, depth_bound)
        cert.towers[v] = trace
        if not ok:
            if trace and not trace[-1].chosen:
                return CosiltingVerdict("false", "no map from the summands reaches P_%s of the opposite "
                                                 "algebra" % v, cert)
            return CosiltingVerdict("undecided", "generation tower for vertex %s did not close within "
                                                 "depth %d" % (v, depth_bound), cert)
    return CosiltingVerdict("true", "orthogonal and cogenerating", cert)


# ---------------------------------------------------------------- windows

@dataclass(frozen=True)
class Window:
    """D^{>=upper} is inside the coaisle, which is inside D^{>=lower}."""

    lower: int
    upper: int

    def contains(self, other: "Window") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def __str__(self):
        return "[%d, %d]" % (self.lower, self.upper)


def cointermediacy_window(X: Complex) -> Window:
    """Measured window of the coaisle of the t-structure cogenerated by X.

    The lower end is the lowest degree with nonzero cohomology (D^{<=n} lies
    in the aisle iff A[-n] does).  The upper end is the largest i with
    Hom(S_v, X[i]) nonzero for some simple S_v (D^{>=m} lies in the coaisle
    iff every S_v[-i], i >= m, does).
    """
    hs = cohomologies(X)
    if not hs:
        raise ValueError("the zero complex has no window")
    lower = min(hs)
    upper = None
    for v in X.quiver.vertices:
        w = derived_hom(stalk(simple(X.quiver, v, X.field)), X)
        nz = [n for n, d in w.dims.items() if d]
        if nz:
            upper = max(nz) if upper is None else max(upper, max(nz))
    return Window(lower, upper)


def perfect_support(X: Complex) -> tuple[int, int]:
    """Degree range of the minimal complex of projectives representing X."""
    degs = resolve(X).data.degrees
    if not degs:
        return (0, 0)
    return (min(degs), max(degs))


@dataclass(frozen=True)
class LadderBounds:
    """Degree ranges of i^*(A), i_*(left algebra), j_!(right algebra), j^*(A) as perfect complexes."""

    t: tuple[int, int]
    s: tuple[int, int]
    u: tuple[int, int]
    v: tuple[int, int]


def measure_ladder_bounds(L) -> LadderBounds:
    A = stalk(regular(L.middle, L.field))
    B1 = stalk(regular(L.left, L.field))
    B2 = stalk(regular(L.right, L.field))
    return LadderBounds(perfect_support(L.i_upper(A)), perfect_support(L.i_lower(B1)),
                        perfect_support(L.j_lower_shriek(B2)), perfect_support(L.j_upper(A)))


def glued_window_bounds(w1: Window, w2: Window, b: LadderBounds) -> Window:
    """A window containing that of any complex glued from windows w1 and w2."""
    return Window(min(w1.lower - b.t[1], w2.lower - b.v[1]), max(w1.upper + b.s[1], w2.upper + b.u[1]))
