"""Complexes of indecomposable projectives described by path data.

A ``PathComplex`` lists, in each degree, the vertices of its indecomposable
summands; a differential entry from the summand at vertex v to the summand at
vertex w is a linear combination of paths w ~> v, i.e. an element of
Hom(P_v, P_w).  The same data describes a complex of injectives through the
Nakayama equivalence P_v -> I_v, so one engine serves both realizations.

Composition rule: if x is an entry of g (paths z ~> w) and y an entry of f
(paths w ~> v) then the entry of g o f is x followed by y.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Mapping, Sequence

from .linalg import Field, Matrix, Span, kernel
from .quiver import Quiver, trivial
from .rep import RepMorphism, Representation, direct_sum, projective

if TYPE_CHECKING:
    from .derived import Complex

Combo = dict  # Path -> scalar


class PathDataError(ValueError):
    pass


def _combo_add(acc: dict, combo: Mapping, c=None):
    for p, x in combo.items():
        y = x if c is None else c * x
        v = acc.get(p)
        v = y if v is None else v + y
        if v:
            acc[p] = v
        else:
            acc.pop(p, None)


def _combo_mul(x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for p, a in x.items():
        for q, b in y.items():
            _combo_add(out, {p.then(q): a * b})
    return out


class PathMatrix:
    """Matrix of path combinations; ``rows`` are target vertices, ``cols`` source vertices."""

    __slots__ = ("quiver", "field", "rows", "cols", "entries")

    def __init__(self, quiver: Quiver, field: Field, rows: Sequence[str], cols: Sequence[str],
                 entries: Mapping[tuple[int, int], Mapping] | None = None):
        self.quiver = quiver
        self.field = field
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.entries: dict[tuple[int, int], dict] = {}
        for (i, j), combo in (entries or {}).items():
            clean = {p: x for p, x in combo.items() if x}
            for p in clean:
                if p.source != self.rows[i] or p.target != self.cols[j]:
                    raise PathDataError("entry (%d,%d) holds path %s, expected %s ~> %s"
                                        % (i, j, p, self.rows[i], self.cols[j]))
            if clean:
                self.entries[(i, j)] = clean

    @classmethod
    def identity(cls, quiver: Quiver, field: Field, verts: Sequence[str]) -> "PathMatrix":
        return cls(quiver, field, verts, verts, {(i, i): {trivial(v): field.one} for i, v in enumerate(verts)})

    def zero_like(self) -> "PathMatrix":
        return PathMatrix(self.quiver, self.field, self.rows, self.cols)

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def get(self, i: int, j: int) -> dict:
        return self.entries.get((i, j), {})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        body = ", ".join("(%d,%d): %s" % (i, j, " + ".join("%s*%s" % (c, p) for p, c in combo.items()))
                         for (i, j), combo in sorted(self.entries.items()))
        return "PathMatrix(%s <- %s; %s)" % (",".join(self.rows), ",".join(self.cols), body)

    def __matmul__(self, other: "PathMatrix") -> "PathMatrix":
        """``self o other``."""
        if self.cols != other.rows:
            raise PathDataError("cannot compose path matrices: %s vs %s" % (self.cols, other.rows))
        by_row: dict[int, list] = {}
        for (k, j), combo in other.entries.items():
            by_row.setdefault(k, []).append((j, combo))
        out: dict = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                _combo_add(out.setdefault((i, j), {}), _combo_mul(x, y))
        return PathMatrix(self.quiver, self.field, self.rows, other.cols, out)

    def __add__(self, other: "PathMatrix") -> "PathMatrix":
        if self.shape != other.shape or self.rows != other.rows or self.cols != other.cols:
            raise PathDataError("adding path matrices of different shapes")
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            _combo_add(out.setdefault(k, {}), v)
        return PathMatrix(self.quiver, self.field, self.rows, self.cols, out)

    def scale(self, c) -> "PathMatrix":
        c = self.field(c)
        return PathMatrix(self.quiver, self.field, self.rows, self.cols,
                          {k: {p: c * x for p, x in v.items()} for k, v in self.entries.items()})

    def __neg__(self) -> "PathMatrix":
        return self.scale(-1)

    def __sub__(self, other: "PathMatrix") -> "PathMatrix":
        return self + (-other)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PathMatrix":
        rmap = {r: a for a, r in enumerate(row_idx)}
        cmap = {c: b for b, c in enumerate(col_idx)}
        out = {(rmap[i], cmap[j]): v for (i, j), v in self.entries.items() if i in rmap and j in cmap}
        return PathMatrix(self.quiver, self.field, [self.rows[i] for i in row_idx],
                          [self.cols[j] for j in col_idx], out)

    def dual(self, op: Quiver | None = None) -> "PathMatrix":
        """Transpose with reversed paths: the same morphism read over the opposite quiver."""
        op = op or self.quiver.opposite()
        return PathMatrix(op, self.field, self.cols, self.rows,
                          {(j, i): {p.reversed(): x for p, x in v.items()} for (i, j), v in self.entries.items()})

    def map_paths(self, quiver: Quiver, rows: Sequence[str] | None = None, cols: Sequence[str] | None = None,
                  keep=None) -> "PathMatrix":
        """Re-read the entries over ``quiver``; ``keep(path)`` filters paths (dropped ones become 0)."""
        out = {}
        for k, v in self.entries.items():
            w = {p: x for p, x in v.items() if keep is None or keep(p)}
            if w:
                out[k] = w
        return PathMatrix(quiver, self.field, self.rows if rows is None else rows,
                          self.cols if cols is None else cols, out)


def block_matrix(quiver: Quiver, field: Field, row_parts: Sequence[Sequence[str]],
                 col_parts: Sequence[Sequence[str]], blocks: Mapping[tuple[int, int], PathMatrix]) -> PathMatrix:
    """Assemble a path matrix from blocks indexed by (row part, column part)."""
    roff, rows = [], []
    for part in row_parts:
        roff.append(len(rows))
        rows.extend(part)
    coff, cols = [], []
    for part in col_parts:
        coff.append(len(cols))
        cols.extend(part)
    out = {}
    for (a, b), m in blocks.items():
        if m is None:
            continue
        if m.rows != tuple(row_parts[a]) or m.cols != tuple(col_parts[b]):
            raise PathDataError("block (%d,%d) has the wrong shape" % (a, b))
        for (i, j), v in m.entries.items():
            out[(roff[a] + i, coff[b] + j)] = v
    return PathMatrix(quiver, field, rows, cols, out)


class PathComplex:
    """A bounded complex of indecomposable projectives given by path data."""

    def __init__(self, quiver: Quiver, field: Field, terms: Mapping[int, Sequence[str]],
                 diffs: Mapping[int, PathMatrix] | None = None, check: bool = True):
        self.quiver = quiver
        self.field = field
        self.terms: dict[int, tuple[str, ...]] = {int(n): tuple(t) for n, t in terms.items() if len(t)}
        self.diffs: dict[int, PathMatrix] = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and n + 1 in self.terms and not d.is_zero():
                if d.cols != self.terms[n] or d.rows != self.terms[n + 1]:
                    raise PathDataError("differential %d does not match the terms" % n)
                self.diffs[n] = d
        if check:
            for n in self.diffs:
                if n + 1 in self.diffs and not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                    raise PathDataError("d o d != 0 at degree %d" % n)

    def term(self, n: int) -> tuple[str, ...]:
        return self.terms.get(n, ())

    def diff(self, n: int) -> PathMatrix:
        d = self.diffs.get(n)
        if d is None:
            return PathMatrix(self.quiver, self.field, self.term(n + 1), self.term(n))
        return d

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def size(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, PathComplex):
            return NotImplemented
        return (self.quiver == other.quiver and self.terms == other.terms
                and all(self.diff(n) == other.diff(n) for n in set(self.terms) | set(other.terms)))

    def __hash__(self):
        return hash((self.quiver, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        body = " | ".join("%d: %s" % (n, ",".join(t)) for n, t in sorted(self.terms.items()))
        return "PathComplex(%s; %s)" % (self.quiver.name, body)

    def shift(self, k: int) -> "PathComplex":
        """X[k]: degree n holds X^(n+k), differential multiplied by (-1)^k."""
        sign = -1 if k % 2 else 1
        return PathComplex(self.quiver, self.field, {n - k: t for n, t in self.terms.items()},
                           {n - k: d.scale(sign) if sign < 0 else d for n, d in self.diffs.items()}, check=False)

    def dual(self) -> "PathComplex":
        """The same complex read over the opposite quiver with degrees negated."""
        op = self.quiver.opposite()
        return PathComplex(op, self.field, {-n: t for n, t in self.terms.items()},
                           {-n - 1: d.dual(op) for n, d in self.diffs.items()}, check=False)

    def identity(self) -> "PathChainMap":
        return PathChainMap(self, self, {n: PathMatrix.identity(self.quiver, self.field, t)
                                         for n, t in self.terms.items()}, check=False)

    @cached_property
    def proj(self) -> "Complex":
        return realize_projective(self)

    @cached_property
    def inj(self) -> "Complex":
        return realize_injective(self)


def zero_complex(quiver: Quiver, field: Field) -> PathComplex:
    return PathComplex(quiver, field, {})


def stalk(quiver: Quiver, field: Field, verts: Sequence[str], degree: int = 0) -> PathComplex:
    return PathComplex(quiver, field, {degree: tuple(verts)})


def direct_sum_pc(parts: Sequence[PathComplex], quiver: Quiver | None = None,
                  field: Field | None = None) -> tuple[PathComplex, list["PathChainMap"], list["PathChainMap"]]:
    """Direct sum with inclusions and projections."""
    if not parts:
        z = zero_complex(quiver, field)
        return z, [], []
    q, f = parts[0].quiver, parts[0].field
    degs = sorted(set().union(*[p.terms for p in parts]))
    terms = {n: tuple(v for p in parts for v in p.term(n)) for n in degs}
    diffs = {}
    for n in degs:
        rp = [p.term(n + 1) for p in parts]
        cp = [p.term(n) for p in parts]
        diffs[n] = block_matrix(q, f, rp, cp, {(i, i): p.diff(n) for i, p in enumerate(parts)})
    total = PathComplex(q, f, terms, diffs, check=False)
    incs, projs = [], []
    for i, p in enumerate(parts):
        ic, pc = {}, {}
        for n in degs:
            parts_n = [x.term(n) for x in parts]
            eye = PathMatrix.identity(q, f, p.term(n))
            ic[n] = block_matrix(q, f, parts_n, [p.term(n)], {(i, 0): eye})
            pc[n] = block_matrix(q, f, [p.term(n)], parts_n, {(0, i): eye})
        incs.append(PathChainMap(p, total, ic, check=False))
        projs.append(PathChainMap(total, p, pc, check=False))
    return total, incs, projs


class PathChainMap:
    __slots__ = ("source", "target", "comps")

    def __init__(self, source: PathComplex, target: PathComplex, comps: Mapping[int, PathMatrix] | None = None,
                 check: bool = True):
        self.source = source
        self.target = target
        self.comps: dict[int, PathMatrix] = {}
        for n, m in (comps or {}).items():
            if m.is_zero():
                continue
            if m.cols != source.term(n) or m.rows != target.term(n):
                raise PathDataError("chain map component %d has the wrong shape" % n)
            self.comps[n] = m
        if check:
            self.check()

    def comp(self, n: int) -> PathMatrix:
        m = self.comps.get(n)
        if m is None:
            return PathMatrix(self.source.quiver, self.source.field, self.target.term(n), self.source.term(n))
        return m

    def check(self):
        for n in set(self.source.terms) | set(self.target.terms) | {k - 1 for k in self.source.terms}:
            lhs = self.target.diff(n) @ self.comp(n)
            rhs = self.comp(n + 1) @ self.source.diff(n)
            if not (lhs - rhs).is_zero():
                raise PathDataError("not a chain map at degree %d" % n)

    def __matmul__(self, other: "PathChainMap") -> "PathChainMap":
        degs = set(self.comps) & set(other.comps)
        return PathChainMap(other.source, self.target, {n: self.comps[n] @ other.comps[n] for n in degs},
                            check=False)

    def __add__(self, other: "PathChainMap") -> "PathChainMap":
        degs = set(self.comps) | set(other.comps)
        return PathChainMap(self.source, self.target, {n: self.comp(n) + other.comp(n) for n in degs}, check=False)

    def __neg__(self) -> "PathChainMap":
        return PathChainMap(self.source, self.target, {n: -m for n, m in self.comps.items()}, check=False)

    def scale(self, c) -> "PathChainMap":
        return PathChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.comps.items()}, check=False)

    def shift(self, k: int) -> "PathChainMap":
        return PathChainMap(self.source.shift(k), self.target.shift(k),
                            {n - k: m for n, m in self.comps.items()}, check=False)

    def dual(self) -> "PathChainMap":
        op = self.source.quiver.opposite()
        return PathChainMap(self.target.dual(), self.source.dual(),
                            {-n: m.dual(op) for n, m in self.comps.items()}, check=False)

    def is_zero(self) -> bool:
        return not self.comps

    def with_ends(self, source: PathComplex, target: PathComplex) -> "PathChainMap":
        """Same components, re-attached to structurally equal end points."""
        return PathChainMap(source, target, self.comps, check=False)


def cone(f: PathChainMap) -> tuple[PathComplex, PathChainMap, PathChainMap]:
    """Mapping cone C of f: X -> Y with the maps Y -> C and C -> X[1].

    C^n = X^(n+1) + Y^n with differential [[-d_X, 0], [f, d_Y]].
    """
    X, Y = f.source, f.target
    q, fld = X.quiver, X.field
    degs = sorted(set(n - 1 for n in X.terms) | set(Y.terms))
    terms = {n: X.term(n + 1) + Y.term(n) for n in degs}
    diffs = {}
    for n in degs:
        rp = [X.term(n + 2), Y.term(n + 1)]
        cp = [X.term(n + 1), Y.term(n)]
        diffs[n] = block_matrix(q, fld, rp, cp, {(0, 0): -X.diff(n + 1), (1, 0): f.comp(n + 1), (1, 1): Y.diff(n)})
    C = PathComplex(q, fld, terms, diffs, check=False)
    X1 = X.shift(1)
    inc, pr = {}, {}
    for n in degs:
        parts = [X.term(n + 1), Y.term(n)]
        inc[n] = block_matrix(q, fld, parts, [Y.term(n)], {(1, 0): PathMatrix.identity(q, fld, Y.term(n))})
        pr[n] = block_matrix(q, fld, [X.term(n + 1)], parts, {(0, 0): PathMatrix.identity(q, fld, X.term(n + 1))})
    return C, PathChainMap(Y, C, inc, check=False), PathChainMap(C, X1, pr, check=False)


def cocone(f: PathChainMap) -> tuple[PathComplex, PathChainMap]:
    """Cocone K = cone(f)[-1] with its map K -> X (the first map of K -> X -> Y -> K[1])."""
    C, _, pr = cone(f)
    K = C.shift(-1)
    return K, PathChainMap(K, f.source, pr.shift(-1).comps, check=False)


def minimize(P: PathComplex, track: bool = True):
    """Remove contractible summands by Gaussian elimination.

    Returns ``(P', pi, iota)`` with pi: P -> P' and iota: P' -> P mutually
    inverse homotopy equivalences (the maps are None when ``track`` is False).
    """
    q, f = P.quiver, P.field
    terms = {n: list(t) for n, t in P.terms.items()}
    diffs = {n: d for n, d in P.diffs.items()}
    pi = P.identity() if track else None
    iota = pi

    def current():
        return PathComplex(q, f, terms, diffs, check=False)

    while True:
        found = None
        for n in sorted(diffs):
            d = diffs[n]
            for (i, j), combo in d.entries.items():
                if d.rows[i] == d.cols[j]:
                    found = (n, i, j, combo[trivial(d.cols[j])])
                    break
            if found:
                break
        if not found:
            break
        before = current() if track else None
        n, i, j, c = found
        d = diffs[n]
        src, tgt = terms[n], terms[n + 1]
        B = [k for k in range(len(src)) if k != j]
        Bp = [k for k in range(len(tgt)) if k != i]
        phi_inv = 1 / c
        delta = d.submatrix([i], B)      # B -> A'
        gamma = d.submatrix(Bp, [j])     # A -> B'
        eps = d.submatrix(Bp, B)
        # gamma phi^-1 delta with phi = c * e_v
        corr = PathMatrix(q, f, eps.rows, eps.cols)
        if gamma.entries and delta.entries:
            g1 = PathMatrix(q, f, gamma.rows, [d.rows[i]], {(k, 0): v for (k, _), v in gamma.entries.items()})
            corr = (g1 @ delta).scale(phi_inv)
        new = {}
        new[n] = eps - corr
        if n - 1 in diffs:
            new[n - 1] = diffs[n - 1].submatrix(B, range(len(terms[n - 1])))
        if n + 1 in diffs:
            new[n + 1] = diffs[n + 1].submatrix(range(len(terms[n + 2])), Bp)
        terms[n] = [src[k] for k in B]
        terms[n + 1] = [tgt[k] for k in Bp]
        for k in (n, n + 1):
            if not terms[k]:
                del terms[k]
        for k, m in new.items():
            diffs[k] = m
        for k in list(diffs):
            if k not in terms or k + 1 not in terms or diffs[k].is_zero():
                del diffs[k]
        if track:
            after = current()
            # pi_step^n = (0, 1); pi_step^(n+1) = (-gamma phi^-1, 1)
            # iota_step^n = (-phi^-1 delta; 1); iota_step^(n+1) = (0; 1)
            pcomp, icomp = {}, {}
            for k, t in after.terms.items():
                if k not in (n, n + 1):
                    pcomp[k] = icomp[k] = PathMatrix.identity(q, f, t)
            pcomp[n] = _proj_rows(q, f, src, B)
            icomp[n + 1] = _incl_cols(q, f, tgt, Bp)
            pm = _proj_rows(q, f, tgt, Bp)
            g_scaled = PathMatrix(q, f, [tgt[k] for k in Bp], [tgt[i]],
                                  {(k, 0): {p: -phi_inv * x for p, x in v.items()} for (k, _), v in gamma.entries.items()})
            g_full = PathMatrix(q, f, g_scaled.rows, tgt, {(k, i): v for (k, _), v in g_scaled.entries.items()})
            pcomp[n + 1] = pm + g_full
            im = _incl_cols(q, f, src, B)
            d_scaled = PathMatrix(q, f, [src[j]], [src[k] for k in B],
                                  {(0, k): {p: -phi_inv * x for p, x in v.items()} for (_, k), v in delta.entries.items()})
            d_full = PathMatrix(q, f, src, d_scaled.cols, {(j, k): v for (_, k), v in d_scaled.entries.items()})
            icomp[n] = im + d_full
            pi_step = PathChainMap(before, after, pcomp, check=False)
            iota_step = PathChainMap(after, before, icomp, check=False)
            pi = pi_step @ pi
            iota = iota @ iota_step
    out = current()
    if track:
        pi = pi.with_ends(P, out)
        iota = iota.with_ends(out, P)
    return out, pi, iota


def _proj_rows(q: Quiver, f: Field, verts: Sequence[str], keep: Sequence[int]) -> PathMatrix:
    """Projection of the sum over ``verts`` onto the summands indexed by ``keep``."""
    return PathMatrix(q, f, [verts[k] for k in keep], verts,
                      {(a, k): {trivial(verts[k]): f.one} for a, k in enumerate(keep)})


def _incl_cols(q: Quiver, f: Field, verts: Sequence[str], keep: Sequence[int]) -> PathMatrix:
    return PathMatrix(q, f, verts, [verts[k] for k in keep],
                      {(k, a): {trivial(verts[k]): f.one} for a, k in enumerate(keep)})


# ---------------------------------------------------------------- realization

@lru_cache(maxsize=None)
def _projective(q: Quiver, v: str, f: Field) -> Representation:
    return projective(q, v, f)


def _sum_of_projectives(q: Quiver, f: Field, verts: Sequence[str]) -> Representation:
    return direct_sum([_projective(q, v, f) for v in verts], q, f)


def realize_matrix(m: PathMatrix, source: Representation | None = None,
                   target: Representation | None = None) -> RepMorphism:
    """The module map between sums of projectives described by ``m``."""
    q, f = m.quiver, m.field
    source = source or _sum_of_projectives(q, f, m.cols)
    target = target or _sum_of_projectives(q, f, m.rows)
    blocks = {}
    for u in q.vertices:
        roff, off = [], 0
        for w in m.rows:
            roff.append(off)
            off += len(q.paths(w, u))
        coff, off2 = [], 0
        for v in m.cols:
            coff.append(off2)
            off2 += len(q.paths(v, u))
        data = [[f.zero] * off2 for _ in range(off)]
        for (i, j), combo in m.entries.items():
            for b, qp in enumerate(q.paths(m.cols[j], u)):
                for x, c in combo.items():
                    data[roff[i] + q.path_index(x.then(qp))][coff[j] + b] += c
        blocks[u] = Matrix._raw(f, off, off2, data)
    return RepMorphism(source, target, blocks, check=False)


def realize_projective(P: PathComplex) -> "Complex":
    from .derived import Complex
    q, f = P.quiver, P.field
    terms = {n: _sum_of_projectives(q, f, t) for n, t in P.terms.items()}
    diffs = {n: realize_matrix(d, terms[n], terms[n + 1]) for n, d in P.diffs.items()}
    return Complex(q, terms, diffs, f, check=False)


def realize_injective(P: PathComplex) -> "Complex":
    from .derived import dualize_complex
    return dualize_complex(P.dual().proj)


def realize_map(fm: PathChainMap, injective: bool = False):
    """Concrete chain map between the projective (or injective) realizations."""
    from .derived import ChainMap, dualize_chain_map
    if injective:
        return dualize_chain_map(realize_map(fm.dual()))
    X, Y = fm.source.proj, fm.target.proj
    return ChainMap(X, Y, {n: realize_matrix(m, X.term(n), Y.term(n)) for n, m in fm.comps.items()}, check=False)


# ---------------------------------------------------------------- Hom complexes

@dataclass
class _Block:
    degree: int
    index: int
    vertex: str
    offset: int
    dim: int


class HomComplex:
    """Hom(P, Y) for a path complex P and a concrete complex Y.

    Degree n consists of the families f_(p,s) in Y^(p+n) at the vertex of the
    summand s of P^p; the differential is d_Y f - (-1)^n f d_P.  A degree-n
    cocycle is literally a chain map P -> Y[n].
    """

    def __init__(self, P: PathComplex, Y: "Complex"):
        self.P = P
        self.Y = Y
        self._layouts: dict[int, tuple[list[_Block], int]] = {}
        self._coh: dict[int, "HomCohomology"] = {}

    @property
    def window(self) -> tuple[int, int]:
        """Degrees outside this range have a zero Hom complex."""
        if self.P.is_zero() or not self.Y.support():
            return (0, -1)
        pd, yd = self.P.degrees, self.Y.support()
        return (min(yd) - max(pd), max(yd) - min(pd))

    def layout(self, n: int) -> tuple[list[_Block], int]:
        if n not in self._layouts:
            blocks, off = [], 0
            for p in self.P.degrees:
                term = self.Y.term(p + n)
                for s, v in enumerate(self.P.term(p)):
                    d = term.dims[v]
                    blocks.append(_Block(p, s, v, off, d))
                    off += d
            self._layouts[n] = (blocks, off)
        return self._layouts[n]

    def matrix(self, n: int) -> Matrix:
        """The differential Hom^n -> Hom^(n+1)."""
        f = self.P.field
        src, ncols = self.layout(n)
        tgt, nrows = self.layout(n + 1)
        data = [[f.zero] * ncols for _ in range(nrows)]
        where = {(b.degree, b.index): b for b in src}
        sign = -1 if n % 2 else 1
        for tb in tgt:
            if tb.dim == 0:
                continue
            p, s, v = tb.degree, tb.index, tb.vertex
            sb = where[(p, s)]
            if sb.dim:
                dy = self.Y.diff(p + n).blocks[v]
                for r in range(tb.dim):
                    row = data[tb.offset + r]
                    for c in range(sb.dim):
                        x = dy[r, c]
                        if x:
                            row[sb.offset + c] += x
            dP = self.P.diff(p)
            Yt = self.Y.term(p + n + 1)
            for (t, s2), combo in dP.entries.items():
                if s2 != s:
                    continue
                ub = where[(p + 1, t)]
                if ub.dim == 0:
                    continue
                m = Yt.path_combination_map(combo, ub.vertex, v)
                for r in range(tb.dim):
                    row = data[tb.offset + r]
                    for c in range(ub.dim):
                        x = m[r, c]
                        if x:
                            row[ub.offset + c] -= sign * x
        return Matrix._raw(f, nrows, ncols, data)

    def cohomology(self, n: int) -> "HomCohomology":
        if n not in self._coh:
            self._coh[n] = HomCohomology(self, n)
        return self._coh[n]

    def dim(self, n: int) -> int:
        return self.cohomology(n).dim

    def dims(self, lo: int | None = None, hi: int | None = None) -> dict[int, int]:
        wlo, whi = self.window
        lo = wlo if lo is None else lo
        hi = whi if hi is None else hi
        return {n: self.dim(n) for n in range(lo, hi + 1)}

    # conversions between cocycle vectors and path chain maps (Y = Z.proj)

    def to_path_components(self, vec: Sequence, n: int, Z: PathComplex) -> dict[int, PathMatrix]:
        """Components P^p -> Z^(p+n) of the cocycle ``vec`` (requires Y = Z.proj)."""
        q, f = self.P.quiver, self.P.field
        blocks, _ = self.layout(n)
        comps: dict[int, dict] = {}
        for b in blocks:
            if b.dim == 0:
                continue
            entries = comps.setdefault(b.degree, {})
            seg = vec[b.offset:b.offset + b.dim]
            pos = 0
            for t, w in enumerate(Z.term(b.degree + n)):
                ps = q.paths(w, b.vertex)
                combo = {p: seg[pos + k] for k, p in enumerate(ps) if seg[pos + k]}
                pos += len(ps)
                if combo:
                    entries[(t, b.index)] = combo
        return {p: PathMatrix(q, f, Z.term(p + n), self.P.term(p), e) for p, e in comps.items()}

    def from_path_components(self, comps: Mapping[int, PathMatrix], n: int, Z: PathComplex) -> list:
        q, f = self.P.quiver, self.P.field
        blocks, total = self.layout(n)
        vec = [f.zero] * total
        for b in blocks:
            m = comps.get(b.degree)
            if m is None or b.dim == 0:
                continue
            pos = b.offset
            for t, w in enumerate(Z.term(b.degree + n)):
                ps = q.paths(w, b.vertex)
                combo = m.get(t, b.index)
                for k, p in enumerate(ps):
                    x = combo.get(p)
                    if x:
                        vec[pos + k] = x
                pos += len(ps)
        return vec

    def concrete_components(self, vec: Sequence, n: int) -> dict[int, RepMorphism]:
        """Components realize(P)^p -> Y^(p+n) as module maps."""
        f = self.P.field
        q = self.P.quiver
        blocks, _ = self.layout(n)
        P = self.P.proj
        out = {}
        for p in self.P.degrees:
            Yt = self.Y.term(p + n)
            parts = []
            for b in blocks:
                if b.degree != p:
                    continue
                # Hom(P_v, Y) = Y_v: send e_v to the vector and extend along paths
                seg = vec[b.offset:b.offset + b.dim]
                blk = {}
                for u in q.vertices:
                    cols = [Yt.path_map(path).apply(seg) if b.dim else [f.zero] * Yt.dims[u]
                            for path in q.paths(b.vertex, u)]
                    blk[u] = Matrix.from_columns(f, cols, Yt.dims[u])
                parts.append(blk)
            out[p] = RepMorphism(P.term(p), Yt, {u: _hcat(f, [blk[u] for blk in parts], Yt.dims[u])
                                                 for u in q.vertices}, check=False)
        return out


def _hcat(f: Field, ms: Sequence[Matrix], rows: int) -> Matrix:
    out = Matrix.zeros(f, rows, 0)
    for m in ms:
        out = out.hstack(m)
    return out


class HomCohomology:
    """Cocycles modulo coboundaries in one degree of a Hom complex."""

    def __init__(self, hc: HomComplex, n: int):
        self.hc = hc
        self.n = n
        f = hc.P.field
        _, size = hc.layout(n)
        self.size = size
        d_out = hc.matrix(n)
        d_in = hc.matrix(n - 1)
        self._span = Span(f, size)
        for c in d_in.columns():
            self._span.add(c)
        self._boundary_rank = len(self._span)
        cycles = kernel(d_out) if d_out.rows else [[f.one if i == j else f.zero for i in range(size)]
                                                     for j in range(size)]
        self.basis: list[list] = []
        for z in cycles:
            if self._span.add(z):
                self.basis.append(z)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: Sequence) -> list | None:
        """Coordinates of the class of the cocycle ``vec`` in ``basis``."""
        co = self._span.coordinates(vec)
        if co is None:
            return None
        return co[self._boundary_rank:]

    def is_coboundary(self, vec: Sequence) -> bool:
        co = self.coordinates(vec)
        return co is not None and not any(co)


def hom(P: PathComplex, Z: PathComplex) -> HomComplex:
    """Hom complex between two path complexes, both read projectively."""
    return HomComplex(P, Z.proj)


def cocycle_map(hc: HomComplex, vec: Sequence, n: int, Z: PathComplex) -> PathChainMap:
    """The degree-n cocycle as a chain map P -> Z[n]."""
    return PathChainMap(hc.P, Z.shift(n), hc.to_path_components(vec, n, Z), check=False)


def map_cocycle(hc: HomComplex, fm: PathChainMap, n: int, Z: PathComplex) -> list:
    """Inverse of ``cocycle_map``: a chain map P -> Z[n] as a cocycle vector."""
    return hc.from_path_components(fm.comps, n, Z)
