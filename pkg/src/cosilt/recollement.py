"""Recollements and height-2 ladders induced by a vertex cut.

For a cut S of the vertices (closed under predecessors or successors) with
e the sum of the idempotents at S, eAe is the path algebra of the full
subquiver on S and A/AeA the path algebra of the full subquiver on the
complement T.  The seven functors are evaluated on path data:

* i_* extends by zero and j^* restricts; both are exact.
* i^* and i^! drop the summands at S (and the paths through S) from a
  projective resolution, respectively an injective coresolution.
* j_! and j_* read a projective resolution, respectively an injective
  coresolution, over the cut quiver as data over the whole quiver.
* j^# is the right adjoint of j_*.  Since j_* = nu o j_! o nu^-1, it equals
  nu_S o j^* o nu^-1 where j^* is applied to a complex of projectives: the
  restriction e P_v splits into projectives P_s indexed by the paths from v
  that meet S only at their end.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from .derived import (Complex, Triangle, coresolve, derived_hom, derived_iso, minimalize, resolve, stalk)
from .derived import cocone as derived_cocone, cone as derived_cone
from .linalg import Field, QQ
from .pathcx import PathChainMap, PathComplex, PathMatrix, minimize, realize_map
from .quiver import Path, Quiver
from .rep import (Representation, extend_by_zero, extend_morphism_by_zero, injective, projective, restrict,
                  restrict_morphism, simple)


class CutNotClosed(ValueError):
    """The cut is neither predecessor- nor successor-closed."""


class StratificationFailed(ValueError):
    """AeA is not projective as a left module."""


class ProbeFailed(RuntimeError):
    """A ladder axiom failed on a probe object."""


class WrongSourceAlgebra(ValueError):
    """A functor was applied to a complex over the wrong algebra."""


class AdjunctionProbeFailed(RuntimeError):
    """The (j_*, j^#) adjunction failed on a probe; the j^# result is withheld."""


FUNCTORS = ("i_*", "i^*", "i^!", "j_!", "j^*", "j_*", "j^#")


def path_vertices(p: Path, quiver: Quiver) -> list[str]:
    out = [p.source]
    for a in p.arrows:
        out.append(quiver.arrow[a].target)
    return out


@dataclass(frozen=True)
class VertexCut:
    quiver: Quiver
    cut: tuple[str, ...]
    closure: str  # "predecessor" or "successor"

    @property
    def complement(self) -> tuple[str, ...]:
        return tuple(v for v in self.quiver.vertices if v not in self.cut)


def _aea(Q: Quiver, cut: set[str], field: Field) -> Representation:
    """The two-sided ideal AeA as a subrepresentation of the regular module."""
    from .linalg import Matrix
    from .rep import regular, subrepresentation
    A = regular(Q, field)
    bases = {}
    for u in Q.vertices:
        cols = []
        off = 0
        for v in Q.vertices:
            for p in Q.paths(v, u):
                if any(x in cut for x in path_vertices(p, Q)):
                    col = [field.zero] * A.dims[u]
                    col[off] = field.one
                    cols.append(col)
                off += 1
        bases[u] = Matrix.from_columns(field, cols, A.dims[u])
    return subrepresentation(A, bases)[0]


def is_projective_module(M: Representation) -> bool:
    """Projective iff Ext^1(M, S_v) = 0 for every vertex v."""
    X = stalk(M)
    for v in M.quiver.vertices:
        if derived_hom(X, stalk(simple(M.quiver, v, M.field))).dim(1):
            return False
    return True


def make_cut(Q: Quiver, cut: Iterable, field: Field = QQ) -> VertexCut:
    cut_set = {str(v) for v in cut}
    unknown = cut_set - set(Q.vertices)
    if unknown:
        raise CutNotClosed("cut mentions unknown vertices %s" % sorted(unknown))
    if not cut_set or cut_set == set(Q.vertices):
        raise CutNotClosed("cut must be a nonempty proper subset of the vertices")
    if Q.predecessors(cut_set) == cut_set:
        closure = "predecessor"
    elif Q.successors(cut_set) == cut_set:
        closure = "successor"
    else:
        raise CutNotClosed("cut %s is closed under neither predecessors nor successors"
                           % sorted(cut_set, key=Q.index.get))
    if not is_projective_module(_aea(Q, cut_set, field)):
        raise StratificationFailed("AeA is not projective for the cut %s" % sorted(cut_set))
    return VertexCut(Q, tuple(v for v in Q.vertices if v in cut_set), closure)


# ---------------------------------------------------------------- data-level functors

def reread(P: PathComplex, quiver: Quiver) -> PathComplex:
    """The same path data over a quiver containing all its paths."""
    return PathComplex(quiver, P.field, P.terms, {n: d.map_paths(quiver) for n, d in P.diffs.items()},
                       check=False)


def reread_map(f: PathChainMap, source: PathComplex, target: PathComplex) -> PathChainMap:
    q = source.quiver
    return PathChainMap(source, target, {n: m.map_paths(q) for n, m in f.comps.items()}, check=False)


def restrict_data(P: PathComplex, sub: Quiver, avoid: set[str]) -> PathComplex:
    """Drop summands at ``avoid`` and the paths meeting it (the data form of i^* and i^!)."""
    big = P.quiver
    terms, keep = {}, {}
    for n, t in P.terms.items():
        keep[n] = [k for k, v in enumerate(t) if v not in avoid]
        terms[n] = [t[k] for k in keep[n]]

    def ok(p: Path) -> bool:
        return not any(x in avoid for x in path_vertices(p, big))

    diffs = {}
    for n, d in P.diffs.items():
        if n + 1 in keep:
            diffs[n] = d.submatrix(keep[n + 1], keep[n]).map_paths(sub, keep=ok)
    return PathComplex(sub, P.field, terms, diffs, check=False)


def _entry_paths(Q: Quiver, v: str, cut: set[str]) -> list[Path]:
    """Paths from v that meet the cut exactly at their last vertex."""
    out = []
    for s in Q.vertices:
        if s not in cut:
            continue
        for p in Q.paths(v, s):
            if all(x not in cut for x in path_vertices(p, Q)[:-1]):
                out.append(p)
    return out


def _split_entry(p: Path, Q: Quiver, cut: set[str]) -> tuple[Path, Path]:
    """p = q then r with q an entry path and r inside the cut."""
    verts = path_vertices(p, Q)
    k = next(i for i, x in enumerate(verts) if x in cut)
    q = Path(p.source, verts[k], p.arrows[:k])
    r = Path(verts[k], p.target, p.arrows[k:])
    return q, r


def restrict_projective_data(P: PathComplex, cut_quiver: Quiver) -> tuple[PathComplex, PathChainMap]:
    """j^* on a complex of projectives, with the counit j_! j^* P -> P.

    Returns W over the cut quiver and the counit, whose source is W read over
    the whole quiver.
    """
    Q, f = P.quiver, P.field
    cut = set(cut_quiver.vertices)
    labels: dict[int, list[tuple[int, Path]]] = {}
    for n, t in P.terms.items():
        labels[n] = [(k, q) for k, v in enumerate(t) for q in _entry_paths(Q, v, cut)]
    terms = {n: [q.target for _, q in lab] for n, lab in labels.items()}
    diffs = {}
    for n, d in P.diffs.items():
        src, tgt = labels[n], labels.get(n + 1, [])
        tpos = {(k, q): i for i, (k, q) in enumerate(tgt)}
        ent: dict = {}
        for c, (s, q) in enumerate(src):
            for (t, s2), combo in d.entries.items():
                if s2 != s:
                    continue
                for x, coef in combo.items():
                    q2, r2 = _split_entry(x.then(q), Q, cut)
                    key = (tpos[(t, q2)], c)
                    cell = ent.setdefault(key, {})
                    cell[r2] = cell.get(r2, f.zero) + coef
        diffs[n] = PathMatrix(cut_quiver, f, terms.get(n + 1, []), terms[n], ent)
    W = PathComplex(cut_quiver, f, terms, diffs, check=False)
    WQ = reread(W, Q)
    counit = {}
    for n, lab in labels.items():
        counit[n] = PathMatrix(Q, f, P.term(n), WQ.term(n), {(k, c): {q: f.one} for c, (k, q) in enumerate(lab)})
    return W, PathChainMap(WQ, P, counit, check=False)


def restrict_injective_data(J: PathComplex, cut_quiver: Quiver) -> tuple[PathComplex, PathChainMap]:
    """j^* on a complex of injectives, with the unit J -> j_* j^* J (dual of the counit)."""
    W_op, counit_op = restrict_projective_data(J.dual(), cut_quiver.opposite())
    W = W_op.dual()
    unit = counit_op.dual()
    return W, PathChainMap(J, unit.target, unit.comps, check=False)


# ---------------------------------------------------------------- the ladder

@dataclass
class LadderContext:
    cut: VertexCut
    field: Field
    middle: Quiver
    left: Quiver     # the complement, A/AeA
    right: Quiver    # the cut, eAe
    probes: dict = dc_field(default_factory=dict)

    @property
    def quivers(self) -> dict[str, Quiver]:
        return {"middle": self.middle, "left": self.left, "right": self.right}

    def source_of(self, name: str) -> Quiver:
        if name == "i_*":
            return self.left
        if name in ("j_!", "j_*"):
            return self.right
        if name in FUNCTORS:
            return self.middle
        raise KeyError("unknown functor %r" % (name,))

    def target_of(self, name: str) -> Quiver:
        if name in ("i^*", "i^!"):
            return self.left
        if name in ("j^*", "j^#"):
            return self.right
        return self.middle

    # raw evaluations (not minimalized)

    def i_lower(self, X: Complex) -> Complex:
        terms = {n: extend_by_zero(t, self.middle) for n, t in X.terms.items()}
        diffs = {n: extend_morphism_by_zero(d, self.middle) for n, d in X.diffs.items()}
        return Complex(self.middle, terms, diffs, X.field, check=False)

    def j_upper(self, X: Complex) -> Complex:
        terms = {n: restrict(t, self.right) for n, t in X.terms.items()}
        diffs = {n: restrict_morphism(d, self.right) for n, d in X.diffs.items()}
        return Complex(self.right, terms, diffs, X.field, check=False)

    def i_upper(self, X: Complex) -> Complex:
        P = restrict_data(resolve(X).data, self.left, set(self.cut.cut))
        return P.proj

    def i_shriek(self, X: Complex) -> Complex:
        J = restrict_data(coresolve(X).data, self.left, set(self.cut.cut))
        return J.inj

    def j_lower_shriek(self, X: Complex) -> Complex:
        return reread(resolve(X).data, self.middle).proj

    def j_lower(self, X: Complex) -> Complex:
        return reread(coresolve(X).data, self.middle).inj

    def j_sharp(self, X: Complex) -> Complex:
        W, _ = restrict_projective_data(coresolve(X).data, self.right)
        return minimize(W, track=False)[0].inj

    def raw(self, name: str) -> Callable[[Complex], Complex]:
        return {"i_*": self.i_lower, "i^*": self.i_upper, "i^!": self.i_shriek, "j_!": self.j_lower_shriek,
                "j^*": self.j_upper, "j_*": self.j_lower, "j^#": self.j_sharp}[name]

    def apply(self, name: str, X: Complex, probe: bool = True) -> Complex:
        return apply_functor(self, name, X, probe)


def _check_source(L: LadderContext, name: str, X: Complex):
    want = L.source_of(name)
    if X.quiver != want or X.field != L.field:
        raise WrongSourceAlgebra("%s expects a complex over %s (%s), got one over %s (%s)"
                                 % (name, want.name, L.field, X.quiver.name, X.field))


def apply_functor(L: LadderContext, name: str, X: Complex, probe: bool = True) -> Complex:
    """Evaluate one of the seven ladder functors; the result is minimalized."""
    if name not in FUNCTORS:
        raise KeyError("unknown functor %r; expected one of %s" % (name, ", ".join(FUNCTORS)))
    _check_source(L, name, X)
    out = L.raw(name)(X)
    if name == "j^#" and probe:
        for v in L.right.vertices:
            Z = stalk(simple(L.right, v, L.field))
            lhs = derived_hom(L.j_lower(Z), X)
            rhs = derived_hom(Z, out)
            lo, hi = min(lhs.lower, rhs.lower), max(lhs.upper, rhs.upper)
            if any(lhs.dim(n) != rhs.dim(n) for n in range(lo, hi + 1)):
                raise AdjunctionProbeFailed("Hom(j_*(S_%s), X[n]) and Hom(S_%s, j^#(X)[n]) differ" % (v, v))
    return minimalize(out)


ADJOINT_PAIRS = {
    # pair: (left functor, right functor, algebra of X, algebra of Y)
    ("i^*", "i_*"): ("i^*", "i_*", "middle", "left"),
    ("i_*", "i^!"): ("i_*", "i^!", "left", "middle"),
    ("j_!", "j^*"): ("j_!", "j^*", "right", "middle"),
    ("j^*", "j_*"): ("j^*", "j_*", "middle", "right"),
    ("j_*", "j^#"): ("j_*", "j^#", "right", "middle"),
}


@dataclass
class AdjunctionReport:
    pair: tuple[str, str]
    lhs: dict[int, int]
    rhs: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def adjunction_check(L: LadderContext, pair: tuple[str, str], X: Complex, Y: Complex,
                     window: tuple[int, int] | None = None) -> AdjunctionReport:
    """Compare dim Hom(F X, Y[n]) with dim Hom(X, G Y[n]) shift by shift."""
    F, G, _, _ = ADJOINT_PAIRS[tuple(pair)]
    a = derived_hom(L.raw(F)(X), Y)
    b = derived_hom(X, L.raw(G)(Y))
    if window is None:
        window = (min(a.lower, b.lower), max(a.upper, b.upper))
    lo, hi = window
    return AdjunctionReport(tuple(pair), {n: a.dim(n) for n in range(lo, hi + 1)},
                            {n: b.dim(n) for n in range(lo, hi + 1)})


def _standard_probes(Q: Quiver, field: Field) -> list[Complex]:
    out = []
    for v in Q.vertices:
        for make in (simple, projective, injective):
            out.append(stalk(make(Q, v, field)))
    return out


def check_axioms(L: LadderContext, left_obj: Complex, right_obj: Complex, middle_obj: Complex) -> list[str]:
    """Failures (as messages) of the ladder axioms on the given objects."""
    fails = []
    if not minimalize(L.j_upper(L.i_lower(left_obj))).is_zero():
        fails.append("j^* i_* != 0")
    if not derived_iso(L.i_shriek(L.i_lower(left_obj)), left_obj):
        fails.append("i^! i_* != id")
    if not derived_iso(L.j_upper(L.j_lower(right_obj)), right_obj):
        fails.append("j^* j_* != id")
    if not derived_iso(L.j_upper(L.j_lower_shriek(right_obj)), right_obj):
        fails.append("j^* j_! != id")
    args = {"left": left_obj, "right": right_obj, "middle": middle_obj}
    for pair, (_, _, xa, ya) in ADJOINT_PAIRS.items():
        rep = adjunction_check(L, pair, args[xa], args[ya])
        if not rep.ok:
            fails.append("adjunction %s: %s vs %s" % (pair, rep.lhs, rep.rhs))
    return fails


def build_ladder(Q: Quiver, cut: Iterable, field: Field = QQ, probe: bool = True) -> LadderContext:
    """Validate the cut and build the ladder, checking the axioms on standard probes."""
    vc = make_cut(Q, cut, field)
    left = Q.full_subquiver(vc.complement)
    right = Q.full_subquiver(vc.cut)
    L = LadderContext(vc, field, Q, left, right)
    if probe:
        lp, rp, mp = (_standard_probes(x, field) for x in (left, right, Q))
        k = max(len(lp), len(rp), len(mp))
        for i in range(k):
            fails = check_axioms(L, lp[i % len(lp)], rp[i % len(rp)], mp[i % len(mp)])
            if fails:
                raise ProbeFailed("; ".join(fails))
        L.probes = {"count": k}
    return L


# ---------------------------------------------------------------- canonical triangles

def canonical_triangles(L: LadderContext, T: Complex) -> tuple[Triangle, Triangle]:
    """i_* i^! T -> T -> j_* j^* T -> and j_! j^* T -> T -> i_* i^* T ->.

    The first is the cocone of the unit on an injective coresolution of T, the
    second the cone of the counit on a projective resolution.  ``notes`` records
    whether the outer terms agree with the functor values.
    """
    _check_source(L, "j^*", T)
    _, unit = restrict_injective_data(coresolve(T).data, L.right)
    first = derived_cocone(realize_map(unit, injective=True))
    _, counit = restrict_projective_data(resolve(T).data, L.right)
    second = derived_cone(realize_map(counit))
    first.notes["model"] = "injective"
    second.notes["model"] = "projective"
    first.notes["outer_terms_match"] = (derived_iso(first.X, L.i_lower(L.i_shriek(T))) and
                                        derived_iso(first.Z, L.j_lower(L.j_upper(T))))
    second.notes["outer_terms_match"] = (derived_iso(second.X, L.j_lower_shriek(L.j_upper(T))) and
                                         derived_iso(second.Z, L.i_lower(L.i_upper(T))))
    return first, second
