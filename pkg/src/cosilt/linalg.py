"""Exact dense linear algebra over Q and prime fields.

Scalars over Q are ``fractions.Fraction``; scalars over F_p are ``ModP``.
Both support the usual arithmetic operators, so the elimination code below
is written once and works for either field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(ValueError):
    """Shape mismatch or malformed matrix data."""


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``kind="Q"``) or F_p (``kind="Fp"``)."""

    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise LinalgError("the rationals take no characteristic")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p) or self.p >= 2**61:
                raise LinalgError("F_p needs a prime p < 2^61, got %r" % (self.p,))
        else:
            raise LinalgError("unknown field kind %r" % (self.kind,))

    @classmethod
    def rationals(cls) -> "Field":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("Fp", p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, ModP or rational string into this field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Q":
            if isinstance(x, ModP):
                raise LinalgError("cannot move an F_p scalar into Q")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise LinalgError("scalar from F_%d used over F_%d" % (x.p, self.p))
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise LinalgError("denominator divisible by p=%d" % self.p)
        return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def to_str(self, x) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        return cls(data["kind"], data.get("p"))

    def __str__(self):
        return "Q" if self.kind == "Q" else "F_%d" % self.p


QQ = Field.rationals()


class Matrix:
    """Immutable dense matrix with exact entries, stored as a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: Iterable[Sequence] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            self.data = tuple((z,) * cols for _ in range(rows))
        else:
            rows_t = tuple(tuple(field(x) for x in r) for r in data)
            if len(rows_t) != rows or any(len(r) != cols for r in rows_t):
                raise LinalgError("matrix data does not have shape %dx%d" % (rows, cols))
            self.data = rows_t

    @classmethod
    def _raw(cls, field: Field, rows: int, cols: int, data) -> "Matrix":
        # trusted constructor: entries already live in ``field``
        m = cls.__new__(cls)
        m.field, m.rows, m.cols = field, rows, cols
        m.data = tuple(tuple(r) for r in data)
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise LinalgError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = list(columns)
        return cls._raw(field, rows, len(cols), [[field(c[i]) for c in cols] for i in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def entries(self) -> list:
        """Row-major flat entry list."""
        return [x for r in self.data for x in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return "Matrix(%dx%d over %s: [%s])" % (self.rows, self.cols, self.field, body)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinalgError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.field, self.rows, self.cols,
                           [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.field, self.rows, self.cols,
                           [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError("cannot multiply %s by %s" % (self.shape, other.shape))
        z = self.field.zero
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), z) for c in ocols])
        return Matrix._raw(self.field, self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise LinalgError("vector length %d, expected %d" % (len(vec), self.cols))
        z = self.field.zero
        nz = [(k, x) for k, x in enumerate(vec) if x]
        return [sum((r[k] * x for k, x in nz), z) for r in self.data]

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.field, self.cols, 0)
        return Matrix._raw(self.field, self.cols, self.rows, list(zip(*self.data)))

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise LinalgError("hstack row mismatch")
        return Matrix._raw(self.field, self.rows, self.cols + other.cols,
                           [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise LinalgError("vstack column mismatch")
        return Matrix._raw(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def rank(self) -> int:
        return reduce(self, transform=False).rank

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise LinalgError("inverse of a non-square matrix")
        red = reduce(self)
        if red.rank != self.rows:
            raise LinalgError("matrix is singular")
        return red.row_transform

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out


def block_diagonal(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.data):
            out[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(field, rows, cols, out)


@dataclass(frozen=True)
class Reduction:
    rank: int
    rref: Matrix
    pivots: tuple[int, ...]
    kernel_basis: Matrix  # columns span the null space
    row_transform: Matrix | None


def _rref_rows(rows: list[list], ncols: int, transform: list[list] | None):
    """In-place Gauss-Jordan elimination. Returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if transform is not None:
                transform[r], transform[piv] = transform[piv], transform[r]
        inv = 1 / rows[r][c]
        prow = rows[r] = [x * inv for x in rows[r]]
        if transform is not None:
            trow = transform[r] = [x * inv for x in transform[r]]
        for i in range(nrows):
            f = rows[i][c] if i != r else 0
            if f:
                ri = rows[i]
                for k in range(c, ncols):
                    if prow[k]:
                        ri[k] = ri[k] - f * prow[k]
                if transform is not None:
                    ti = transform[i]
                    for k, t in enumerate(trow):
                        if t:
                            ti[k] = ti[k] - f * t
        pivots.append(c)
        r += 1
    return pivots


def _kernel_from_rref(field: Field, rows: list[list], pivots: list[int], ncols: int) -> list[list]:
    pivset = set(pivots)
    z, o = field.zero, field.one
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [z] * ncols
        v[free] = o
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(v)
    return basis


def reduce(M: Matrix, transform: bool = True) -> Reduction:
    """Row-reduce ``M``.

    ``row_transform @ M == rref`` holds exactly; kernel basis vectors are the
    columns of ``kernel_basis`` (one per free column of the echelon form).
    """
    f = M.field
    rows = [list(r) for r in M.data]
    tr = None
    if transform:
        tr = Matrix.identity(f, M.rows).tolist()
    pivots = _rref_rows(rows, M.cols, tr)
    kern = _kernel_from_rref(f, rows, pivots, M.cols)
    return Reduction(
        rank=len(pivots),
        rref=Matrix._raw(f, M.rows, M.cols, rows),
        pivots=tuple(pivots),
        kernel_basis=Matrix.from_columns(f, kern, M.cols),
        row_transform=Matrix._raw(f, M.rows, M.rows, tr) if transform else None,
    )


def kernel(M: Matrix) -> list[list]:
    """Basis of {x : Mx = 0} as a list of vectors."""
    rows = [list(r) for r in M.data]
    pivots = _rref_rows(rows, M.cols, None)
    return _kernel_from_rref(M.field, rows, pivots, M.cols)


def solve(A: Matrix, b: Sequence):
    """A particular solution of ``A x = b``, or ``None`` when inconsistent."""
    if len(b) != A.rows:
        raise LinalgError("right-hand side has length %d, expected %d" % (len(b), A.rows))
    f = A.field
    rows = [list(r) + [f(x)] for r, x in zip(A.data, b)]
    pivots = _rref_rows(rows, A.cols + 1, None)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [f.zero] * A.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][A.cols]
    return x


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with ``A X = B``, or ``None``."""
    if A.rows != B.rows:
        raise LinalgError("row mismatch in solve_matrix")
    f = A.field
    rows = [list(r) + list(s) for r, s in zip(A.data, B.data)]
    pivots = _rref_rows(rows, A.cols + B.cols, None)
    if any(pc >= A.cols for pc in pivots):
        return None
    out = [[f.zero] * B.cols for _ in range(A.cols)]
    for i, pc in enumerate(pivots):
        out[pc] = rows[i][A.cols:]
    return Matrix._raw(f, A.cols, B.cols, out)


def rank_of_vectors(field: Field, vectors: Sequence[Sequence], length: int) -> int:
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    return len(_rref_rows(rows, length, None))


class Span:
    """Incrementally maintained row-echelon basis of a subspace of k^n.

    Supports membership tests, coordinates relative to the inserted vectors,
    and reduction modulo the span.
    """

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self._rows: list[list] = []     # echelon rows, pivot entry 1
        self._pivots: list[int] = []
        self._combo: list[list] = []     # each echelon row as a combination of inserted vectors
        self.count = 0                   # vectors inserted (independent ones only)

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v: Sequence):
        v = [self.field(x) for x in v]
        z = self.field.zero
        combo = [z] * self.count
        for row, pc, cmb in zip(self._rows, self._pivots, self._combo):
            c = v[pc]
            if c:
                for k in range(pc, self.n):
                    if row[k]:
                        v[k] = v[k] - c * row[k]
                for k, t in enumerate(cmb):
                    if t:
                        combo[k] = combo[k] - c * t
        return v, combo

    def reduce(self, v: Sequence) -> list:
        return self._reduce(v)[0]

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns False (and stores nothing) when it is dependent."""
        r, combo = self._reduce(v)
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is None:
            return False
        inv = 1 / r[pc]
        r = [x * inv for x in r]
        combo = [x * inv for x in combo] + [inv]
        for cmb in self._combo:
            cmb.append(self.field.zero)
        self.count += 1
        self._rows.append(r)
        self._pivots.append(pc)
        self._combo.append(combo)
        return True

    def coordinates(self, v: Sequence) -> list | None:
        """Coefficients expressing ``v`` in the inserted vectors, or None."""
        r, combo = self._reduce(v)
        if any(r):
            return None
        return [-c for c in combo]
