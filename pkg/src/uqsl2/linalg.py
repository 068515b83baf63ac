"""Exact dense linear algebra over Q(q).

Matrices are small (weight spaces here rarely exceed a dozen dimensions), so
plain Gaussian elimination with a cheap pivot heuristic is enough.  Shapes
are explicit so that 0 x k and k x 0 blocks behave.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, RatScalar, ScalarLike, render_scalar, scalar

Vector = tuple[RatScalar, ...]


class ShapeError(ValueError):
    pass


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[ScalarLike]], ncols: int | None = None):
        rows = tuple(tuple(scalar(v) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("column count required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "Matrix":
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.nrows = nrows
        obj.ncols = ncols
        obj._hash = None
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)),
                        n, n)

    @classmethod
    def scalar_matrix(cls, n: int, c: ScalarLike) -> "Matrix":
        c = scalar(c)
        return cls._raw(tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)),
                        n, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[ScalarLike]], nrows: int) -> "Matrix":
        cols = [tuple(scalar(v) for v in c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise ShapeError("column length mismatch")
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), nrows, len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> RatScalar:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(not v for r in self.rows for v in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)),
                           self.ncols, self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, c: ScalarLike) -> "Matrix":
        c = scalar(c)
        return Matrix._raw(tuple(tuple(a * c for a in r) for r in self.rows), self.nrows, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows
        rows = []
        for r in self.rows:
            out = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(tuple(out))
        return Matrix._raw(tuple(rows), self.nrows, other.ncols)

    def apply(self, v: Sequence[RatScalar]) -> Vector:
        if len(v) != self.ncols:
            raise ShapeError(f"vector of length {len(v)} for a {self.shape} matrix")
        out = []
        for r in self.rows:
            acc = ZERO
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.to_strings()!r}, shape={self.shape})"

    def to_strings(self) -> list[list[str]]:
        return [[render_scalar(v) for v in r] for r in self.rows]

    # elimination-based queries -------------------------------------------
    def rank(self) -> int:
        return len(rref(self)[1])

    def nullspace(self) -> list[Vector]:
        return nullspace(self)

    def inverse(self) -> "Matrix | None":
        return inverse(self)


def _pick_pivot(rows: list[list[RatScalar]], col: int, start: int) -> int | None:
    best, best_size = None, None
    for i in range(start, len(rows)):
        v = rows[i][col]
        if v:
            s = v.size()
            if best is None or s < best_size:
                best, best_size = i, s
                if s == 1 and v.is_monomial():
                    break
    return best


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        if r == len(rows):
            break
        p = _pick_pivot(rows, c, r)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv if v else v for v in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [a - k * b if b else a for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(x) for x in rows), m.nrows, m.ncols), pivots


def nullspace(m: Matrix) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * m.ncols
        v[fcol] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red.rows[r][fcol]
        basis.append(tuple(v))
    return basis


def column_space(vectors: Sequence[Sequence[RatScalar]], dim: int) -> list[Vector]:
    """A basis (subset of the input) of the span of the given vectors."""
    if not vectors:
        return []
    _, pivots = rref(Matrix.from_columns(vectors, dim))
    return [tuple(vectors[c]) for c in pivots]


def rank_of(vectors: Sequence[Sequence[RatScalar]], dim: int) -> int:
    if not vectors:
        return 0
    return Matrix.from_columns(vectors, dim).rank()


def solve(m: Matrix, b: Sequence[RatScalar]) -> Vector | None:
    """Some x with m x = b, or None if the system is inconsistent."""
    if len(b) != m.nrows:
        raise ShapeError("right-hand side length mismatch")
    aug = Matrix._raw(tuple(r + (scalar(v),) for r, v in zip(m.rows, b)), m.nrows, m.ncols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = red.rows[r][m.ncols]
    return tuple(x)


def coordinates(basis: Sequence[Sequence[RatScalar]], v: Sequence[RatScalar]) -> Vector | None:
    """Coordinates of v in the (independent) basis, or None if v is outside the span."""
    if not basis:
        return () if all(not x for x in v) else None
    return solve(Matrix.from_columns(basis, len(v)), v)


def inverse(m: Matrix) -> Matrix | None:
    if not m.is_square():
        return None
    n = m.nrows
    if n == 0:
        return m
    aug = Matrix._raw(tuple(r + tuple(ONE if i == j else ZERO for j in range(n))
                            for i, r in enumerate(m.rows)), n, 2 * n)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix._raw(tuple(r[n:] for r in red.rows), n, n)


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and m.rank() == m.nrows


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = []
    c0 = 0
    for b in blocks:
        for r in b.rows:
            rows.append((ZERO,) * c0 + r + (ZERO,) * (nc - c0 - b.ncols))
        c0 += b.ncols
    return Matrix._raw(tuple(rows), nr, nc)


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    if any(b.nrows != nrows for b in blocks):
        raise ShapeError("hstack row mismatch")
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows))
    return Matrix._raw(rows, nrows, sum(b.ncols for b in blocks))


def vstack(blocks: Sequence[Matrix], ncols: int) -> Matrix:
    if any(b.ncols != ncols for b in blocks):
        raise ShapeError("vstack column mismatch")
    rows = sum((b.rows for b in blocks), ())
    return Matrix._raw(rows, len(rows), ncols)


def char_poly_multiplicity(m: Matrix, c: RatScalar) -> int:
    """Algebraic multiplicity of c as an eigenvalue of the square matrix m.

    Equal to the stable dimension of ker (m - c)^k, reached by k = n.
    """
    n = m.nrows
    shifted = m - Matrix.scalar_matrix(n, c)
    power = Matrix.identity(n)
    prev = 0
    for _ in range(n):
        power = power @ shifted
        d = n - power.rank()
        if d == prev:
            break
        prev = d
    return prev


def render_vector(v: Sequence[RatScalar]) -> str:
    return "(" + ", ".join(render_scalar(x) for x in v) + ")"
