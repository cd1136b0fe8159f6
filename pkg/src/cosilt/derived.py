"""Bounded cochain complexes of representations and the derived category.

Path algebras of acyclic quivers are hereditary, so every object of the
bounded derived category is isomorphic to the sum of its shifted cohomology
modules.  Minimal models, derived isomorphism and Krull-Schmidt decomposition
are therefore computed on cohomology; derived Hom goes through a projective
resolution of the source.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .decompose import decompose_module, iso_modules
from .linalg import Field, Matrix, QQ, kernel
from .pathcx import (HomComplex, PathComplex, PathMatrix, block_matrix,
                     minimize, realize_map)
from .quiver import Path, Quiver, trivial
from .rep import (RepMorphism, Representation, direct_sum, dualize, dualize_morphism, injective,
                  projective, simple, subquotient, zero_rep)


class ComplexError(ValueError):
    pass


def _block_morphism(rows: Sequence[Representation], cols: Sequence[Representation],
                    blocks: Mapping[tuple[int, int], RepMorphism], source: Representation,
                    target: Representation) -> RepMorphism:
    """Assemble a morphism between direct sums from its components."""
    f = source.field
    out = {}
    for v in source.quiver.vertices:
        data = [[f.zero] * source.dims[v] for _ in range(target.dims[v])]
        roff = 0
        for a, r in enumerate(rows):
            coff = 0
            for b, c in enumerate(cols):
                m = blocks.get((a, b))
                if m is not None:
                    blk = m.blocks[v]
                    for i in range(blk.rows):
                        for j in range(blk.cols):
                            data[roff + i][coff + j] = blk[i, j]
                coff += c.dims[v]
            roff += r.dims[v]
        out[v] = Matrix._raw(f, target.dims[v], source.dims[v], data)
    return RepMorphism(source, target, out, check=False)


class Complex:
    """A bounded cochain complex; differentials raise degree."""

    __slots__ = ("quiver", "field", "terms", "diffs")

    def __init__(self, quiver: Quiver, terms: Mapping[int, Representation],
                 diffs: Mapping[int, RepMorphism] | None = None, field: Field = QQ, check: bool = True):
        self.quiver = quiver
        self.field = field
        self.terms: dict[int, Representation] = {}
        for n, t in terms.items():
            if t.quiver != quiver or t.field != field:
                raise ComplexError("term %d lives over a different algebra" % n)
            if t.total_dim:
                self.terms[int(n)] = t
        self.diffs: dict[int, RepMorphism] = {}
        for n, d in (diffs or {}).items():
            n = int(n)
            if n in self.terms and n + 1 in self.terms:
                if d.source.dims != self.terms[n].dims or d.target.dims != self.terms[n + 1].dims:
                    raise ComplexError("differential %d has the wrong shape" % n)
                if not d.is_zero():
                    self.diffs[n] = RepMorphism(self.terms[n], self.terms[n + 1], d.blocks, check=check)
            elif not d.is_zero():
                raise ComplexError("nonzero differential %d between missing terms" % n)
        if check:
            for n in self.diffs:
                if n + 1 in self.diffs and not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                    raise ComplexError("d o d != 0 at degree %d" % n)

    def term(self, n: int) -> Representation:
        t = self.terms.get(n)
        return t if t is not None else zero_rep(self.quiver, self.field)

    def diff(self, n: int) -> RepMorphism:
        d = self.diffs.get(n)
        if d is None:
            return RepMorphism.zero(self.term(n), self.term(n + 1))
        return d

    def support(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def dimvec(self) -> tuple[int, ...]:
        """Alternating sum of the term dimension vectors."""
        out = [0] * len(self.quiver.vertices)
        for n, t in self.terms.items():
            s = -1 if n % 2 else 1
            for k, d in enumerate(t.dimvec):
                out[k] += s * d
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field and self.terms == other.terms
                and all(self.diff(n) == other.diff(n) for n in self.terms))

    def __hash__(self):
        return hash((self.quiver, tuple((n, t.dimvec) for n, t in sorted(self.terms.items()))))

    def __repr__(self):
        body = ", ".join("%d: %s" % (n, t.dimvec) for n, t in sorted(self.terms.items()))
        return "Complex(%s; %s)" % (self.quiver.name, body or "0")

    def identity(self) -> "ChainMap":
        return ChainMap(self, self, {n: t.identity() for n, t in self.terms.items()}, check=False)


def zero_complex(quiver: Quiver, field: Field = QQ) -> Complex:
    return Complex(quiver, {}, {}, field)


def stalk(M: Representation, degree: int = 0) -> Complex:
    """M concentrated in ``degree`` (so ``stalk(M, d)`` is M[-d])."""
    return Complex(M.quiver, {degree: M}, {}, M.field)


class ChainMap:
    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Complex, target: Complex, comps: Mapping[int, RepMorphism] | None = None,
                 check: bool = True):
        self.source = source
        self.target = target
        self.comps: dict[int, RepMorphism] = {}
        for n, m in (comps or {}).items():
            if m.source.dims != source.term(n).dims or m.target.dims != target.term(n).dims:
                raise ComplexError("chain map component %d has the wrong shape" % n)
            if not m.is_zero():
                self.comps[n] = RepMorphism(source.term(n), target.term(n), m.blocks, check=check)
        if check:
            degs = set(source.terms) | {n - 1 for n in source.terms}
            for n in degs:
                lhs = target.diff(n) @ self.comp(n)
                rhs = self.comp(n + 1) @ source.diff(n)
                if lhs != rhs:
                    raise ComplexError("not a chain map at degree %d" % n)

    def comp(self, n: int) -> RepMorphism:
        m = self.comps.get(n)
        if m is None:
            return RepMorphism.zero(self.source.term(n), self.target.term(n))
        return m

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) & set(other.comps)
        return ChainMap(other.source, self.target, {n: self.comps[n] @ other.comps[n] for n in degs}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {n: self.comp(n) + other.comp(n) for n in degs}, check=False)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -m for n, m in self.comps.items()}, check=False)

    def is_zero(self) -> bool:
        return not self.comps

    def cohomology_map(self, n: int) -> RepMorphism:
        """The induced map H^n(source) -> H^n(target)."""
        hs, sec_s, _ = _cohomology_data(self.source, n)
        ht, _, coords_t = _cohomology_data(self.target, n)
        f = self.source.field
        blocks = {}
        for v in self.source.quiver.vertices:
            cols = []
            for c in sec_s[v].columns():
                cols.append(coords_t(v, self.comp(n).blocks[v].apply(c)))
            blocks[v] = Matrix.from_columns(f, cols, ht.dims[v])
        return RepMorphism(hs, ht, blocks, check=False)

    def is_quasi_iso(self) -> bool:
        degs = set(self.source.terms) | set(self.target.terms)
        return all(self.cohomology_map(n).is_iso() for n in degs)


@dataclass
class Triangle:
    """X -f-> Y -g-> Z -h-> X[1]."""

    X: Complex
    Y: Complex
    Z: Complex
    f: ChainMap
    g: ChainMap
    h: ChainMap
    notes: dict = dc_field(default_factory=dict)

    def check(self) -> bool:
        """Consecutive composites induce zero maps on cohomology (a necessary condition)."""
        degs = set(self.X.terms) | set(self.Y.terms) | set(self.Z.terms)
        for n in degs | {d - 1 for d in degs}:
            if not (self.g @ self.f).cohomology_map(n).is_zero():
                return False
            if not (self.h @ self.g).cohomology_map(n).is_zero():
                return False
        return True


def shift(X: Complex, k: int) -> Complex:
    """X[k]: degree n holds X^(n+k) and the differential picks up (-1)^k."""
    sign = -1 if k % 2 else 1
    return Complex(X.quiver, {n - k: t for n, t in X.terms.items()},
                   {n - k: (d if sign > 0 else -d) for n, d in X.diffs.items()}, X.field, check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n - k: m for n, m in f.comps.items()}, check=False)


def direct_sum_complexes(parts: Sequence[Complex], quiver: Quiver | None = None,
                         field: Field | None = None) -> Complex:
    if not parts:
        return zero_complex(quiver, field or QQ)
    q, f = parts[0].quiver, parts[0].field
    degs = sorted(set().union(*[p.terms for p in parts]))
    terms = {n: direct_sum([p.term(n) for p in parts], q, f) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        rows = [p.term(n + 1) for p in parts]
        cols = [p.term(n) for p in parts]
        diffs[n] = _block_morphism(rows, cols, {(i, i): p.diff(n) for i, p in enumerate(parts)},
                                   terms[n], terms[n + 1])
    return Complex(q, terms, diffs, f, check=False)


def cone(fm: ChainMap) -> Triangle:
    """Mapping cone: C^n = X^(n+1) + Y^n with differential [[-d_X, 0], [f, d_Y]]."""
    X, Y = fm.source, fm.target
    degs = sorted(set(n - 1 for n in X.terms) | set(Y.terms))
    terms = {n: direct_sum([X.term(n + 1), Y.term(n)], X.quiver, X.field) for n in degs}
    diffs = {}
    for n in degs:
        src = terms[n]
        tgt = terms.get(n + 1) or direct_sum([X.term(n + 2), Y.term(n + 1)], X.quiver, X.field)
        diffs[n] = _block_morphism([X.term(n + 2), Y.term(n + 1)], [X.term(n + 1), Y.term(n)],
                                   {(0, 0): -X.diff(n + 1), (1, 0): fm.comp(n + 1), (1, 1): Y.diff(n)}, src, tgt)
    C = Complex(X.quiver, terms, diffs, X.field, check=False)
    X1 = shift(X, 1)
    g, h = {}, {}
    for n in degs:
        t = C.term(n)
        g[n] = _block_morphism([X.term(n + 1), Y.term(n)], [Y.term(n)], {(1, 0): Y.term(n).identity()},
                               Y.term(n), t)
        h[n] = _block_morphism([X.term(n + 1)], [X.term(n + 1), Y.term(n)], {(0, 0): X.term(n + 1).identity()},
                               t, X1.term(n))
    return Triangle(X, Y, C, fm, ChainMap(Y, C, g, check=False), ChainMap(C, X1, h, check=False))


def cocone(fm: ChainMap) -> Triangle:
    """The rotated triangle K -> X -> Y -> K[1] with K = cone(f)[-1]."""
    tri = cone(fm)
    K = shift(tri.Z, -1)
    to_x = ChainMap(K, fm.source, shift_map(tri.h, -1).comps, check=False)
    back = ChainMap(fm.target, shift(K, 1), tri.g.comps, check=False)
    return Triangle(K, fm.source, fm.target, to_x, fm, back)


def _cohomology_data(X: Complex, n: int):
    M = X.term(n)
    f = X.field
    big, small = {}, {}
    for v in X.quiver.vertices:
        d = M.dims[v]
        dn = X.diff(n).blocks[v]
        ker = kernel(dn) if dn.rows else [[f.one if i == j else f.zero for i in range(d)] for j in range(d)]
        big[v] = Matrix.from_columns(f, ker, d)
        small[v] = Matrix.from_columns(f, X.diff(n - 1).blocks[v].columns(), d)
    return subquotient(M, big, small)


def cohomology(X: Complex, n: int) -> Representation:
    return _cohomology_data(X, n)[0]


def cohomologies(X: Complex) -> dict[int, Representation]:
    out = {}
    for n in X.support():
        h = cohomology(X, n)
        if h.total_dim:
            out[n] = h
    return out


def minimalize(X: Complex) -> Complex:
    """A quasi-isomorphic complex without contractible summands.

    Over a hereditary algebra the sum of shifted cohomology modules (with zero
    differential) is such a model.
    """
    return Complex(X.quiver, cohomologies(X), {}, X.field)


def is_acyclic(X: Complex) -> bool:
    return not cohomologies(X)


def dualize_complex(X: Complex) -> Complex:
    """D(X) over the opposite quiver: D(X)^n = D(X^-n)."""
    terms = {-n: dualize(t) for n, t in X.terms.items()}
    diffs = {-n - 1: dualize_morphism(d) for n, d in X.diffs.items()}
    op = X.quiver.opposite()
    return Complex(op, terms, diffs, X.field, check=False)


def dualize_chain_map(fm: ChainMap) -> ChainMap:
    return ChainMap(dualize_complex(fm.target), dualize_complex(fm.source),
                    {-n: dualize_morphism(m) for n, m in fm.comps.items()}, check=False)


# ---------------------------------------------------------------- resolutions

def _resolution_data(X: Complex):
    """Totalized standard resolution of X as path data plus its augmentation."""
    q, f = X.quiver, X.field
    one = f.one

    def r0(M):
        return [(v, i) for v in q.vertices for i in range(M.dims[v])]

    def r1(M):
        return [(a, i) for a in q.arrows for i in range(M.dims[a.source])]

    def verts0(idx):
        return [v for v, _ in idx]

    def verts1(idx):
        return [a.target for a, _ in idx]

    degs = sorted(set(X.terms) | {n - 1 for n in X.terms})
    span = range(degs[0], degs[-1] + 2) if degs else range(0)
    R0 = {n: r0(X.term(n)) for n in span}
    R1 = {n: r1(X.term(n + 1)) for n in span}

    def boundary(M, i0, i1) -> PathMatrix:
        pos0 = {k: a for a, k in enumerate(i0)}
        ent = {}
        for c, (a, i) in enumerate(i1):
            u, v = a.source, a.target
            ent[(pos0[(u, i)], c)] = {Path(u, v, (a.name,)): one}
            col = M.maps[a.name].column(i)
            for j, x in enumerate(col):
                if x:
                    ent.setdefault((pos0[(v, j)], c), {})[trivial(v)] = -x
        return PathMatrix(q, f, verts0(i0), verts1(i1), ent)

    def lift0(d: RepMorphism, src, tgt) -> PathMatrix:
        pos = {k: a for a, k in enumerate(tgt)}
        ent = {}
        for c, (v, i) in enumerate(src):
            for j, x in enumerate(d.blocks[v].column(i)):
                if x:
                    ent[(pos[(v, j)], c)] = {trivial(v): x}
        return PathMatrix(q, f, verts0(tgt), verts0(src), ent)

    def lift1(d: RepMorphism, src, tgt, sign) -> PathMatrix:
        pos = {k: a for a, k in enumerate(tgt)}
        ent = {}
        for c, (a, i) in enumerate(src):
            for j, x in enumerate(d.blocks[a.source].column(i)):
                if x:
                    ent[(pos[(a, j)], c)] = {trivial(a.target): sign * x}
        return PathMatrix(q, f, verts1(tgt), verts1(src), ent)

    terms, diffs = {}, {}
    for n in degs:
        terms[n] = verts0(R0[n]) + verts1(R1[n])
    for n in degs:
        rp = [verts0(R0[n + 1]), verts1(R1[n + 1])]
        cp = [verts0(R0[n]), verts1(R1[n])]
        blocks = {(0, 0): lift0(X.diff(n), R0[n], R0[n + 1]),
                  (0, 1): boundary(X.term(n + 1), R0[n + 1], R1[n]),
                  (1, 1): lift1(X.diff(n + 1), R1[n], R1[n + 1], -one)}
        diffs[n] = block_matrix(q, f, rp, cp, blocks)
    P = PathComplex(q, f, terms, diffs, check=False)

    # augmentation: summand (v, i) of R0 sends the path p: v ~> w to X^n_p(e_i)
    real = P.proj
    aug = {}
    for n in degs:
        if n not in X.terms or n not in P.terms:
            continue
        M = X.term(n)
        blocks = {}
        for w in q.vertices:
            cols = []
            for v, i in R0[n]:
                for p in q.paths(v, w):
                    cols.append(M.path_map(p).column(i))
            for a, i in R1[n]:
                for _ in q.paths(a.target, w):
                    cols.append([f.zero] * M.dims[w])
            blocks[w] = Matrix.from_columns(f, cols, M.dims[w])
        aug[n] = RepMorphism(real.term(n), M, blocks, check=False)
    return P, ChainMap(real, X, aug, check=False)


@dataclass
class Resolution:
    """A minimal complex of projectives (as path data) with a quasi-isomorphism to X."""

    data: PathComplex
    augmentation: ChainMap

    @property
    def complex(self) -> Complex:
        return self.data.proj


def resolve(X: Complex) -> Resolution:
    P, aug = _resolution_data(X)
    Pm, _, iota = minimize(P)
    return Resolution(Pm, aug @ realize_map(iota))


@dataclass
class Coresolution:
    """A minimal complex of injectives (as path data) with a quasi-isomorphism from X."""

    data: PathComplex
    coaugmentation: ChainMap

    @property
    def complex(self) -> Complex:
        return self.data.inj


def coresolve(X: Complex) -> Coresolution:
    res = resolve(dualize_complex(X))
    J = res.data.dual()
    co = dualize_chain_map(res.augmentation)
    return Coresolution(J, ChainMap(X, J.inj, co.comps, check=False))


def proj_resolve(X: Complex) -> tuple[Complex, ChainMap]:
    """A complex of projectives with a quasi-isomorphism onto X."""
    r = resolve(X)
    return r.complex, r.augmentation


def inj_coresolve(X: Complex) -> tuple[Complex, ChainMap]:
    """A complex of injectives with a quasi-isomorphism from X."""
    c = coresolve(X)
    return c.complex, c.coaugmentation


# ---------------------------------------------------------------- derived Hom

@dataclass
class HomWindow:
    """dim Hom_D(X, Y[n]) for lower <= n <= upper; zero outside this range."""

    lower: int
    upper: int
    dims: dict[int, int]
    hom: HomComplex | None = None

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0) if self.lower <= n <= self.upper else 0

    def nonzero(self) -> dict[int, int]:
        return {n: d for n, d in self.dims.items() if d}

    def basis(self, n: int) -> list[ChainMap]:
        """Chain maps realize(P) -> Y[n] representing a basis of Hom(X, Y[n])."""
        if self.hom is None or not self.lower <= n <= self.upper:
            return []
        hc = self.hom
        Yn = shift(hc.Y, n)
        out = []
        for vec in hc.cohomology(n).basis:
            comps = hc.concrete_components(vec, n)
            out.append(ChainMap(hc.P.proj, Yn, comps, check=False))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.dims.items())


def hom_window(hc: HomComplex, window: tuple[int, int] | None = None) -> HomWindow:
    lo, hi = hc.window if window is None else window
    return HomWindow(lo, hi, {n: hc.dim(n) for n in range(lo, hi + 1)}, hc)


def derived_hom(X: Complex, Y: Complex, window: tuple[int, int] | None = None) -> HomWindow:
    """Hom_D(X, Y[n]) over the complete window (or the one given)."""
    if X.quiver != Y.quiver or X.field != Y.field:
        raise ComplexError("derived Hom between complexes over different algebras")
    return hom_window(HomComplex(resolve(X).data, Y), window)


# ---------------------------------------------------------------- decomposition

def derived_iso(X: Complex, Y: Complex) -> bool:
    """X and Y isomorphic in the derived category (cohomology-wise module isomorphism)."""
    hx, hy = cohomologies(X), cohomologies(Y)
    if set(hx) != set(hy):
        return False
    return all(iso_modules(hx[n], hy[n])[0] for n in hx)


def decompose_complex(X: Complex, seed: int = 0) -> list[tuple[Complex, int]]:
    """Indecomposable summands of X in the derived category: stalks of indecomposable modules."""
    out = []
    for n, h in sorted(cohomologies(X).items()):
        for m, k in decompose_module(h, seed):
            out.append((stalk(m, n), k))
    return out


def _same_indecomposable(a: Complex, b: Complex) -> bool:
    (da, ma), = a.terms.items()
    (db, mb), = b.terms.items()
    return da == db and iso_modules(ma, mb)[0]


def prod_equivalent(X: Complex, Y: Complex) -> tuple[bool, list[tuple[Complex, Complex | None]]]:
    """Same sets of indecomposable summands, plus the matching found (None = unmatched)."""
    px = [c for c, _ in decompose_complex(X)]
    py = [c for c, _ in decompose_complex(Y)]
    matching = []
    ok = True
    for a in px:
        b = next((b for b in py if _same_indecomposable(a, b)), None)
        matching.append((a, b))
        ok = ok and b is not None
    for b in py:
        if not any(_same_indecomposable(a, b) for a in px):
            matching.append((b, None))
            ok = False
    return ok, matching


def module_name(M: Representation) -> str:
    """P_v, I_v or S_v when M is standard, otherwise M(dimension vector)."""
    q, f = M.quiver, M.field
    for kind, make in (("I", injective), ("P", projective), ("S", simple)):
        for v in q.vertices:
            N = make(q, v, f)
            if N.dimvec == M.dimvec and iso_modules(N, M)[0]:
                return "%s_%s" % (kind, v)
    return "M(%s)" % ",".join(str(d) for d in M.dimvec)


def summand_names(X: Complex) -> list[str]:
    """Names of indecomposable summands, one per multiplicity, like 'I_1' or 'I_1[-1]'."""
    names = []
    for part, k in decompose_complex(X):
        (deg, m), = part.terms.items()
        base = module_name(m)
        names.extend([base if deg == 0 else "%s[%d]" % (base, -deg)] * k)
    return names
