"""Finite-dimensional representations of acyclic quivers and their morphisms.

Conventions: the projective P_v has basis at u given by the paths v ~> u and
an arrow acts by appending itself.  The injective I_v is defined as the dual
of the projective at v over the opposite quiver, so its basis at u is dual to
the paths u ~> v.  With these choices I_3 = P_1 on 1 -> 2 -> 3.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .linalg import Field, LinalgError, Matrix, QQ, Span, block_diagonal, kernel, solve_matrix
from .quiver import Path, Quiver


class RepError(ValueError):
    pass


class Representation:
    """A vector space per vertex and a matrix per arrow (target dim x source dim)."""

    __slots__ = ("quiver", "field", "dims", "maps")

    def __init__(self, quiver: Quiver, dims: Mapping[str, int], maps: Mapping[str, Matrix] | None = None,
                 field: Field = QQ):
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        extra = set(dims) - set(quiver.vertices)
        if extra:
            raise RepError("dimensions given for unknown vertices %s" % sorted(extra))
        maps = dict(maps or {})
        extra = set(maps) - set(quiver.arrow)
        if extra:
            raise RepError("maps given for unknown arrows %s" % sorted(extra))
        self.maps: dict[str, Matrix] = {}
        for a in quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(field, *shape)
            if m.shape != shape:
                raise RepError("map %s has shape %s, expected %s" % (a.name, m.shape, shape))
            if m.field != field:
                raise RepError("map %s lives over %s, not %s" % (a.name, m.field, field))
            self.maps[a.name] = m

    def dim(self, v: str) -> int:
        return self.dims[v]

    @property
    def dimvec(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and self.dims == other.dims and self.maps == other.maps)

    def __hash__(self):
        return hash((self.quiver, self.dimvec))

    def __repr__(self):
        return "Representation(%s, dims %s)" % (self.quiver.name, self.dimvec)

    def path_map(self, path: Path) -> Matrix:
        """The linear map M_source -> M_target induced by ``path``."""
        out = Matrix.identity(self.field, self.dims[path.source])
        for name in path.arrows:
            out = self.maps[name] @ out
        return out

    def path_combination_map(self, combo: Mapping[Path, object], source: str, target: str) -> Matrix:
        out = Matrix.zeros(self.field, self.dims[target], self.dims[source])
        for p, c in combo.items():
            out = out + self.path_map(p).scale(c)
        return out

    def identity(self) -> "RepMorphism":
        return RepMorphism(self, self, {v: Matrix.identity(self.field, d) for v, d in self.dims.items()},
                           check=False)

    def is_isomorphic_by_identity(self, other: "Representation") -> bool:
        return self == other


def zero_rep(quiver: Quiver, field: Field = QQ) -> Representation:
    return Representation(quiver, {}, {}, field)


def direct_sum(reps: Sequence[Representation], quiver: Quiver | None = None,
               field: Field | None = None) -> Representation:
    if not reps:
        if quiver is None:
            raise RepError("empty direct sum needs a quiver")
        return zero_rep(quiver, field or QQ)
    q, f = reps[0].quiver, reps[0].field
    for r in reps:
        if r.quiver != q or r.field != f:
            raise RepError("direct sum of representations over different algebras")
    dims = {v: sum(r.dims[v] for r in reps) for v in q.vertices}
    maps = {a.name: block_diagonal(f, [r.maps[a.name] for r in reps]) for a in q.arrows}
    return Representation(q, dims, maps, f)


class RepMorphism:
    """A morphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation,
                 blocks: Mapping[str, Matrix] | None = None, check: bool = True):
        if source.quiver != target.quiver or source.field != target.field:
            raise RepError("morphism between representations over different algebras")
        self.source = source
        self.target = target
        f = source.field
        blocks = dict(blocks or {})
        self.blocks: dict[str, Matrix] = {}
        for v in source.quiver.vertices:
            shape = (target.dims[v], source.dims[v])
            b = blocks.get(v)
            if b is None:
                b = Matrix.zeros(f, *shape)
            if b.shape != shape:
                raise RepError("block at %s has shape %s, expected %s" % (v, b.shape, shape))
            self.blocks[v] = b
        if check:
            for a in source.quiver.arrows:
                lhs = target.maps[a.name] @ self.blocks[a.source]
                rhs = self.blocks[a.target] @ source.maps[a.name]
                if lhs != rhs:
                    raise RepError("morphism does not commute with arrow %s" % a.name)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "RepMorphism":
        return cls(source, target, {}, check=False)

    def __getitem__(self, v: str) -> Matrix:
        return self.blocks[v]

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """Composition ``self o other``."""
        if other.target.dims != self.source.dims:
            raise RepError("composition of incompatible morphisms")
        return RepMorphism(other.source, self.target,
                           {v: self.blocks[v] @ other.blocks[v] for v in self.blocks}, check=False)

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.blocks[v] + other.blocks[v] for v in self.blocks}, check=False)

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: self.blocks[v] - other.blocks[v] for v in self.blocks}, check=False)

    def __neg__(self) -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: -b for v, b in self.blocks.items()}, check=False)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()},
                           check=False)

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(self.blocks.values()))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_iso(self) -> bool:
        return all(b.is_invertible() for b in self.blocks.values())

    def inverse(self) -> "RepMorphism":
        return RepMorphism(self.target, self.source, {v: b.inverse() for v, b in self.blocks.items()},
                           check=False)

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks.values())

    def vector(self) -> list:
        """Flattened coordinates (vertex order, row-major)."""
        return [x for v in self.source.quiver.vertices for x in self.blocks[v].entries()]

    def __repr__(self):
        return "RepMorphism(%s -> %s)" % (self.source.dimvec, self.target.dimvec)


def _hom_layout(M: Representation, N: Representation):
    offs, off = {}, 0
    for v in M.quiver.vertices:
        offs[v] = off
        off += N.dims[v] * M.dims[v]
    return offs, off


def morphism_from_vector(M: Representation, N: Representation, vec: Sequence) -> RepMorphism:
    offs, _ = _hom_layout(M, N)
    blocks = {}
    for v in M.quiver.vertices:
        r, c = N.dims[v], M.dims[v]
        o = offs[v]
        blocks[v] = Matrix._raw(M.field, r, c, [vec[o + i * c:o + (i + 1) * c] for i in range(r)])
    return RepMorphism(M, N, blocks, check=False)


def hom_equations(M: Representation, N: Representation) -> Matrix:
    """The linear system whose kernel is Hom(M, N) in flattened coordinates."""
    if M.quiver != N.quiver or M.field != N.field:
        raise RepError("Hom between representations over different algebras")
    f = M.field
    offs, nvars = _hom_layout(M, N)
    rows = []
    z = f.zero
    for a in M.quiver.arrows:
        u, v = a.source, a.target
        Na, Ma = N.maps[a.name], M.maps[a.name]
        mu, mv, nu, nv = M.dims[u], M.dims[v], N.dims[u], N.dims[v]
        # (N_a f_u - f_v M_a)[i, j] = 0
        for i in range(nv):
            for j in range(mu):
                row = [z] * nvars
                for k in range(nu):
                    c = Na[i, k]
                    if c:
                        row[offs[u] + k * mu + j] += c
                for k in range(mv):
                    c = Ma[k, j]
                    if c:
                        row[offs[v] + i * mv + k] -= c
                rows.append(row)
    return Matrix._raw(f, len(rows), nvars, rows)


def hom_space(M: Representation, N: Representation) -> list[RepMorphism]:
    """A basis of Hom(M, N)."""
    eqs = hom_equations(M, N)
    if eqs.rows == 0:
        f = M.field
        basis = [[f.one if i == j else f.zero for i in range(eqs.cols)] for j in range(eqs.cols)]
    else:
        basis = kernel(eqs)
    return [morphism_from_vector(M, N, b) for b in basis]


def dualize(M: Representation) -> Representation:
    """D(M) = Hom_k(M, k) as a representation of the opposite quiver."""
    return Representation(M.quiver.opposite(), M.dims, {a: m.transpose() for a, m in M.maps.items()}, M.field)


def dualize_morphism(f: RepMorphism) -> RepMorphism:
    """D(f): D(target) -> D(source)."""
    return RepMorphism(dualize(f.target), dualize(f.source),
                       {v: b.transpose() for v, b in f.blocks.items()}, check=False)


def projective(Q: Quiver, v: str, field: Field = QQ) -> Representation:
    if v not in Q.index:
        raise RepError("unknown vertex %r" % (v,))
    dims = {u: len(Q.paths(v, u)) for u in Q.vertices}
    maps = {}
    for a in Q.arrows:
        src, tgt = Q.paths(v, a.source), Q.paths(v, a.target)
        rows = [[field.zero] * len(src) for _ in tgt]
        for j, q in enumerate(src):
            rows[Q.path_index(q.then(Path(a.source, a.target, (a.name,))))][j] = field.one
        maps[a.name] = Matrix._raw(field, len(tgt), len(src), rows)
    return Representation(Q, dims, maps, field)


def injective(Q: Quiver, v: str, field: Field = QQ) -> Representation:
    return dualize(projective(Q.opposite(), v, field))


def simple(Q: Quiver, v: str, field: Field = QQ) -> Representation:
    if v not in Q.index:
        raise RepError("unknown vertex %r" % (v,))
    return Representation(Q, {v: 1}, {}, field)


def standard_module(Q: Quiver, v: str, kind: str, field: Field = QQ) -> Representation:
    """The projective, injective or simple module at vertex ``v``."""
    makers = {"projective": projective, "injective": injective, "simple": simple,
              "P": projective, "I": injective, "S": simple}
    try:
        make = makers[kind]
    except KeyError:
        raise RepError("unknown module kind %r" % (kind,)) from None
    return make(Q, str(v), field)


def regular(Q: Quiver, field: Field = QQ) -> Representation:
    """The path algebra as a left module over itself."""
    return direct_sum([projective(Q, v, field) for v in Q.vertices])


def dual_regular(Q: Quiver, field: Field = QQ) -> Representation:
    """D(A), the sum of all indecomposable injectives."""
    return direct_sum([injective(Q, v, field) for v in Q.vertices])


def subrepresentation(M: Representation, bases: Mapping[str, Matrix]) -> tuple[Representation, RepMorphism]:
    """The subrepresentation spanned by the columns of ``bases[v]`` plus its inclusion.

    The columns must be independent and the span closed under the arrows.
    """
    f = M.field
    dims = {v: bases[v].cols for v in M.quiver.vertices}
    maps = {}
    for a in M.quiver.arrows:
        image = M.maps[a.name] @ bases[a.source]
        coords = solve_matrix(bases[a.target], image)
        if coords is None:
            raise RepError("subspace is not closed under arrow %s" % a.name)
        maps[a.name] = coords
    sub = Representation(M.quiver, dims, maps, f)
    return sub, RepMorphism(sub, M, dict(bases), check=False)


def subquotient(M: Representation, big: Mapping[str, Matrix], small: Mapping[str, Matrix]):
    """The quotient of the arrow-closed subspace ``big`` by the arrow-closed ``small``.

    Returns ``(Q, section, coords)`` where ``section[v]`` lists representatives
    (as columns in M_v) of the chosen basis of Q_v and ``coords[v]`` maps a
    vector of ``big[v]`` (in M-coordinates) to its class in Q_v.
    """
    f = M.field
    section: dict[str, Matrix] = {}
    proj: dict[str, Matrix] = {}
    for v in M.quiver.vertices:
        d = M.dims[v]
        S, B = small[v], big[v]
        chosen = []
        # greedily extend a basis of ``small`` by columns of ``big``
        span = Span(f, d)
        for c in S.columns():
            span.add(c)
        for c in B.columns():
            if span.add(c):
                chosen.append(c)
        section[v] = Matrix.from_columns(f, chosen, d)
        # coordinates of a vector w.r.t. [S | section] keep the section part
        full = S.hstack(section[v]) if S.cols else section[v]
        proj[v] = (full, S.cols)
    dims = {v: section[v].cols for v in M.quiver.vertices}
    maps = {}
    for a in M.quiver.arrows:
        full, k = proj[a.target]
        image = M.maps[a.name] @ section[a.source]
        co = solve_matrix(full, image)
        if co is None:
            raise RepError("subquotient data not closed under arrow %s" % a.name)
        maps[a.name] = co.submatrix(range(k, co.rows), range(co.cols))
    quo = Representation(M.quiver, dims, maps, f)

    def coords(v: str, vec: Sequence) -> list:
        full, k = proj[v]
        co = solve_matrix(full, Matrix.from_columns(f, [vec], full.rows))
        if co is None:
            raise RepError("vector outside the subquotient numerator")
        return co.column(0)[k:]

    return quo, section, coords


def restrict(M: Representation, sub: Quiver) -> Representation:
    """Restriction to the full subquiver ``sub`` (the functor e(-))."""
    return Representation(sub, {v: M.dims[v] for v in sub.vertices},
                          {a.name: M.maps[a.name] for a in sub.arrows}, M.field)


def restrict_morphism(f: RepMorphism, sub: Quiver) -> RepMorphism:
    return RepMorphism(restrict(f.source, sub), restrict(f.target, sub),
                       {v: f.blocks[v] for v in sub.vertices}, check=False)


def extend_by_zero(M: Representation, big: Quiver) -> Representation:
    """View a representation of a full subquiver as one of ``big``."""
    for a in big.arrows:
        if a.name not in M.quiver.arrow and M.dims.get(a.source, 0) and M.dims.get(a.target, 0):
            raise RepError("extension by zero breaks arrow %s" % a.name)
    dims = {v: M.dims.get(v, 0) for v in big.vertices}
    maps = {a.name: M.maps[a.name] for a in big.arrows if a.name in M.maps}
    return Representation(big, dims, maps, M.field)


def extend_morphism_by_zero(f: RepMorphism, big: Quiver) -> RepMorphism:
    src, tgt = extend_by_zero(f.source, big), extend_by_zero(f.target, big)
    return RepMorphism(src, tgt, {v: f.blocks[v] for v in f.blocks}, check=False)


def conjugate(M: Representation, changes: Mapping[str, Matrix]) -> Representation:
    """The representation with basis changed by ``changes[v]`` (invertible) at each vertex."""
    maps = {a.name: changes[a.target] @ M.maps[a.name] @ changes[a.source].inverse() for a in M.quiver.arrows}
    return Representation(M.quiver, M.dims, maps, M.field)


def from_json(data: dict, quiver: Quiver, field: Field) -> Representation:
    try:
        dims = {str(v): int(d) for v, d in data["dims"].items()}
        maps = {}
        for a in quiver.arrows:
            raw = data.get("maps", {}).get(a.name)
            r, c = dims.get(a.target, 0), dims.get(a.source, 0)
            if raw is None or (r == 0 or c == 0):
                maps[a.name] = Matrix.zeros(field, r, c)
            else:
                maps[a.name] = Matrix(field, r, c, raw)
    except (KeyError, TypeError, ValueError, LinalgError) as exc:
        raise RepError("malformed representation: %s" % exc) from exc
    return Representation(quiver, dims, maps, field)


def to_json(M: Representation) -> dict:
    return {
        "quiver": M.quiver.name,
        "dims": {v: M.dims[v] for v in M.quiver.vertices},
        "maps": {a: [[str(x) for x in row] for row in m.data] for a, m in M.maps.items()},
    }


def morphism_to_json(f: RepMorphism) -> dict:
    return {v: [[str(x) for x in row] for row in b.data] for v, b in f.blocks.items()}


def morphism_from_json(data: Mapping, source: Representation, target: Representation) -> RepMorphism:
    field = source.field
    blocks = {}
    for v in source.quiver.vertices:
        r, c = target.dims[v], source.dims[v]
        raw = data.get(v)
        blocks[v] = Matrix.zeros(field, r, c) if raw is None or r == 0 or c == 0 else Matrix(field, r, c, raw)
    return RepMorphism(source, target, blocks)


def stack_morphisms_to_sum(parts: Iterable[RepMorphism], source: Representation,
                           target: Representation) -> RepMorphism:
    """Given f_i: N_i -> M, the morphism (f_1, ..., f_k): N_1 + ... + N_k -> M."""
    f = source.field
    blocks = {}
    parts = list(parts)
    for v in source.quiver.vertices:
        m = None
        for p in parts:
            m = p.blocks[v] if m is None else m.hstack(p.blocks[v])
        blocks[v] = m if m is not None else Matrix.zeros(f, target.dims[v], 0)
    return RepMorphism(source, target, blocks, check=False)
