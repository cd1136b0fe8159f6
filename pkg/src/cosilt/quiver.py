"""Finite acyclic quivers and their paths."""
from __future__ import annotations

from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, NamedTuple, Sequence


class QuiverError(ValueError):
    pass


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    """A path listed in traversal order; a trivial path has no arrows."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def then(self, other: "Path") -> "Path":
        """Follow ``self`` and then ``other``."""
        if self.target != other.source:
            raise QuiverError("cannot join %s with %s" % (self, other))
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        """The same path read in the opposite quiver."""
        return Path(self.target, self.source, self.arrows[::-1])

    def __str__(self):
        if not self.arrows:
            return "e_%s" % self.source
        return "*".join(self.arrows)


def trivial(v: str) -> Path:
    return Path(v, v, ())


class Quiver:
    """An acyclic quiver with ordered vertex labels and named arrows."""

    def __init__(self, vertices: Iterable, arrows: Iterable[Sequence], name: str = "Q"):
        self.name = name
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.arrows: tuple[Arrow, ...] = tuple(Arrow(str(a), str(s), str(t)) for a, s, t in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex label in %s" % (self.vertices,))
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name in %s" % (names,))
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError("arrow %s has an unknown endpoint" % (a.name,))
        ts = TopologicalSorter({v: set() for v in self.vertices})
        for a in self.arrows:
            ts.add(a.target, a.source)
        try:
            self.topological_order: tuple[str, ...] = tuple(ts.static_order())
        except CycleError as exc:
            raise QuiverError("quiver has an oriented cycle") from exc

    @classmethod
    def linear(cls, n: int, name: str | None = None) -> "Quiver":
        """1 -> 2 -> ... -> n with arrows a1, a2, ..."""
        return cls([str(i) for i in range(1, n + 1)],
                   [("a%d" % i, str(i), str(i + 1)) for i in range(1, n)],
                   name or "A%d" % n)

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrs = ", ".join("%s:%s->%s" % a for a in self.arrows)
        return "Quiver(%s; vertices %s; %s)" % (self.name, ",".join(self.vertices), arrs)

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    @cached_property
    def _paths(self) -> dict[tuple[str, str], tuple[Path, ...]]:
        table: dict[tuple[str, str], list[Path]] = {}
        for v in self.vertices:
            stack = [trivial(v)]
            while stack:
                p = stack.pop()
                table.setdefault((v, p.target), []).append(p)
                for a in self.out_arrows(p.target):
                    stack.append(Path(v, a.target, p.arrows + (a.name,)))
        return {k: tuple(sorted(ps, key=lambda p: (len(p.arrows), p.arrows))) for k, ps in table.items()}

    def paths(self, u: str, w: str) -> tuple[Path, ...]:
        """All paths from ``u`` to ``w``, shortest first."""
        return self._paths.get((u, w), ())

    @cached_property
    def _path_index(self) -> dict[Path, int]:
        return {p: i for ps in self._paths.values() for i, p in enumerate(ps)}

    def path_index(self, p: Path) -> int:
        return self._path_index[p]

    def path_from_arrows(self, names: Sequence[str], source: str | None = None) -> Path:
        if not names:
            if source is None:
                raise QuiverError("a trivial path needs its vertex")
            return trivial(source)
        p = Path(self.arrow[names[0]].source, self.arrow[names[0]].source)
        for n in names:
            a = self.arrow[n]
            p = p.then(Path(a.source, a.target, (n,)))
        return p

    def opposite(self) -> "Quiver":
        name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows], name)

    def full_subquiver(self, vertices: Iterable[str], name: str | None = None) -> "Quiver":
        keep = set(vertices)
        unknown = keep - set(self.vertices)
        if unknown:
            raise QuiverError("unknown vertices %s" % sorted(unknown))
        return Quiver([v for v in self.vertices if v in keep],
                      [a for a in self.arrows if a.source in keep and a.target in keep],
                      name or "%s|%s" % (self.name, ",".join(v for v in self.vertices if v in keep)))

    def predecessors(self, vs: Iterable[str]) -> set[str]:
        """Vertices with a path into ``vs`` (including ``vs``)."""
        vs = set(vs)
        return {u for u in self.vertices if any(self.paths(u, w) for w in vs)}

    def successors(self, vs: Iterable[str]) -> set[str]:
        vs = set(vs)
        return {w for w in self.vertices if any(self.paths(u, w) for u in vs)}

    def euler_form(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<a, b> = sum_v a_v b_v - sum over arrows u->w of a_u b_w."""
        ix = self.index
        return (sum(x * y for x, y in zip(a, b))
                - sum(a[ix[arr.source]] * b[ix[arr.target]] for arr in self.arrows))

    def to_json(self) -> dict:
        return {"name": self.name, "vertices": list(self.vertices),
                "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        try:
            return cls(data["vertices"], [(a["name"], a["from"], a["to"]) for a in data["arrows"]],
                       data.get("name", "Q"))
        except (KeyError, TypeError) as exc:
            raise QuiverError("malformed quiver: missing %s" % exc) from exc
