"""Exact rational linear algebra.

Vectors and matrices hold arbitrary-precision rationals
(:class:`fractions.Fraction`) in sparse dictionaries; no floating point
anywhere.  Elimination is fraction-free: rows are scaled to integers and
reduced with the Bareiss one-step method, so intermediate pivots stay
integral when the input is integral.  Pivoting picks the first row with a
nonzero entry in the current column; no size heuristics, which keeps every
result reproducible bit for bit.

Solving a linear system classifies the outcome as exactly one of
:class:`Unique`, :class:`Affine` (particular solution plus kernel basis) or
:class:`Inconsistent` (with the index of an input row that reduces to
``0 = nonzero``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimensionError, ScalarError, SingularMatrixError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^-?\d+(/\d+)?$")


def scalar(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, ``p/q`` string or Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ScalarError(f"not an exact rational: {value!r}")


def parse_scalar(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with integer p, q; reject anything else."""
    if not isinstance(text, str) or not _SCALAR_RE.match(text):
        raise ScalarError(f"not an exact rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ScalarError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_scalar(value: Fraction) -> str:
    """Render as ``p/q``, or ``p`` when the denominator is one."""
    return str(value)


class Vector:
    """Sparse exact vector: dimension plus an index -> nonzero value map."""

    __slots__ = ("dim", "_data")

    def __init__(self, dim: int, data: dict[int, Fraction] | None = None):
        if dim < 0:
            raise DimensionError(f"negative dimension {dim}")
        self.dim = dim
        self._data: dict[int, Fraction] = {}
        if data:
            for i, v in data.items():
                if not 0 <= i < dim:
                    raise DimensionError(f"index {i} out of range for dim {dim}")
                if v != 0:
                    self._data[i] = Fraction(v)

    @staticmethod
    def zero(dim: int) -> "Vector":
        return Vector(dim)

    @staticmethod
    def unit(dim: int, index: int) -> "Vector":
        return Vector(dim, {index: ONE})

    @staticmethod
    def from_dense(values: Sequence[Union[int, str, Fraction]]) -> "Vector":
        return Vector(len(values), {i: scalar(v) for i, v in enumerate(values)})

    def entries(self) -> Iterator[tuple[int, Fraction]]:
        """Nonzero entries in increasing index order."""
        return iter(sorted(self._data.items()))

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i < self.dim:
            raise DimensionError(f"index {i} out of range for dim {self.dim}")
        return self._data.get(i, ZERO)

    def is_zero(self) -> bool:
        return not self._data

    def support(self) -> int:
        return len(self._data)

    def to_dense(self) -> list[Fraction]:
        return [self._data.get(i, ZERO) for i in range(self.dim)]

    def __add__(self, other: "Vector") -> "Vector":
        self._check_dim(other)
        out = dict(self._data)
        for i, v in other._data.items():
            s = out.get(i, ZERO) + v
            if s == 0:
                out.pop(i, None)
            else:
                out[i] = s
        return Vector(self.dim, out)

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-1) * other

    def __rmul__(self, c: Union[int, Fraction]) -> "Vector":
        c = Fraction(c)
        if c == 0:
            return Vector(self.dim)
        return Vector(self.dim, {i: c * v for i, v in self._data.items()})

    def __neg__(self) -> "Vector":
        return (-1) * self

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Vector)
            and self.dim == other.dim
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self._data.items()))))

    def __repr__(self) -> str:
        return f"Vector({self.dim}, {{{', '.join(f'{i}: {v}' for i, v in self.entries())}}})"

    def format(self) -> str:
        return "(" + ", ".join(format_scalar(v) for v in self.to_dense()) + ")"

    def _check_dim(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")


class Matrix:
    """Sparse exact matrix keyed by (row, column)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: dict[tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        self._data: dict[tuple[int, int], Fraction] = {}
        if data:
            for (r, c), v in data.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionError(f"entry ({r}, {c}) out of range for shape ({rows}, {cols})")
                if v != 0:
                    self._data[(r, c)] = Fraction(v)

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, {(i, i): ONE for i in range(n)})

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Union[int, str, Fraction]]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        data = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionError("ragged rows")
            for c, v in enumerate(row):
                data[(r, c)] = scalar(v)
        return Matrix(nrows, ncols, data)

    @staticmethod
    def from_columns(columns: Sequence[Vector]) -> "Matrix":
        if not columns:
            return Matrix(0, 0)
        dim = columns[0].dim
        data = {}
        for c, col in enumerate(columns):
            if col.dim != dim:
                raise DimensionError("columns of mixed dimension")
            for r, v in col.entries():
                data[(r, c)] = v
        return Matrix(dim, len(columns), data)

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """Nonzero entries in row-major order."""
        for (r, c) in sorted(self._data):
            yield r, c, self._data[(r, c)]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise DimensionError(f"entry ({r}, {c}) out of range")
        return self._data.get((r, c), ZERO)

    def column(self, c: int) -> Vector:
        if not 0 <= c < self.cols:
            raise DimensionError(f"column {c} out of range")
        return Vector(self.rows, {r: v for (r, cc), v in self._data.items() if cc == c})

    def row(self, r: int) -> Vector:
        if not 0 <= r < self.rows:
            raise DimensionError(f"row {r} out of range")
        return Vector(self.cols, {c: v for (rr, c), v in self._data.items() if rr == r})

    def to_rows(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._data.items()})

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        out = dict(self._data)
        for key, v in other._data.items():
            s = out.get(key, ZERO) + v
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Matrix(self.rows, self.cols, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-1) * other

    def __rmul__(self, c: Union[int, Fraction]) -> "Matrix":
        c = Fraction(c)
        if c == 0:
            return Matrix(self.rows, self.cols)
        return Matrix(self.rows, self.cols, {k: c * v for k, v in self._data.items()})

    def __matmul__(self, other: Union["Matrix", Vector]):
        if isinstance(other, Vector):
            if self.cols != other.dim:
                raise DimensionError(f"cannot apply {self.rows}x{self.cols} to dim {other.dim}")
            out: dict[int, Fraction] = {}
            for (r, c), v in self._data.items():
                x = other._data.get(c)
                if x is not None:
                    s = out.get(r, ZERO) + v * x
                    if s == 0:
                        out.pop(r, None)
                    else:
                        out[r] = s
            return Vector(self.rows, out)
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            # group right factor by row to skip guaranteed-zero products
            by_row: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in other._data.items():
                by_row.setdefault(r, []).append((c, v))
            out2: dict[tuple[int, int], Fraction] = {}
            for (r, k), v in self._data.items():
                for c, w in by_row.get(k, ()):
                    key = (r, c)
                    s = out2.get(key, ZERO) + v * w
                    if s == 0:
                        out2.pop(key, None)
                    else:
                        out2[key] = s
            return Matrix(self.rows, other.cols, out2)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self._data.items()))))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {len(self._data)} nonzero)"

    def _check_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


@dataclass(frozen=True)
class Unique:
    """The system has exactly one solution."""

    solution: Vector


@dataclass(frozen=True)
class Affine:
    """Solutions form particular + span(kernel); kernel vectors are
    normalized so their first nonzero coordinate is one."""

    particular: Vector
    kernel: tuple[Vector, ...]


@dataclass(frozen=True)
class Inconsistent:
    """No solution; witness_row indexes an input row that reduces to
    0 = nonzero after elimination."""

    witness_row: int


SolveResult = Union[Unique, Affine, Inconsistent]


def _integer_rows(matrix: Matrix, rhs_columns: Sequence[Vector]) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; returns augmented integer rows."""
    width = matrix.cols + len(rhs_columns)
    rows: list[list[int]] = [[0] * width for _ in range(matrix.rows)]
    for (r, c), v in matrix._data.items():
        rows[r][c] = v  # temporarily fractions; scaled below
    for j, col in enumerate(rhs_columns):
        if col.dim != matrix.rows:
            raise DimensionError("right-hand side length does not match row count")
        for r, v in col.entries():
            rows[r][matrix.cols + j] = v
    for row in rows:
        denoms = [x.denominator for x in row if isinstance(x, Fraction) and x != 0]
        scale = lcm(*denoms) if denoms else 1
        for i, x in enumerate(row):
            row[i] = int(x * scale) if x else 0
    return rows, width


def _bareiss(rows: list[list[int]], pivot_cols: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Fraction-free forward elimination in place.

    Pivots are searched in the leading ``pivot_cols`` columns only, taking
    the first row with a nonzero entry.  Returns the pivot positions and
    the permutation mapping current row slots to original row indices.
    """
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    origin = list(range(nrows))
    pivots: list[tuple[int, int]] = []
    prev = 1
    prow = 0
    for col in range(min(pivot_cols, width)):
        sel = next((r for r in range(prow, nrows) if rows[r][col] != 0), None)
        if sel is None:
            continue
        if sel != prow:
            rows[prow], rows[sel] = rows[sel], rows[prow]
            origin[prow], origin[sel] = origin[sel], origin[prow]
        piv = rows[prow][col]
        for r in range(prow + 1, nrows):
            f = rows[r][col]
            row_r = rows[r]
            row_p = rows[prow]
            for j in range(col, width):
                # one-step Bareiss update; division is exact by the
                # Sylvester minor identity
                q, rem = divmod(piv * row_r[j] - f * row_p[j], prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                row_r[j] = q
        pivots.append((prow, col))
        prev = piv
        prow += 1
        if prow == nrows:
            break
    return pivots, origin


def _back_substitute(
    rows: list[list[int]],
    pivots: list[tuple[int, int]],
    ncols: int,
    rhs_col: int,
    free_values: dict[int, Fraction],
) -> Vector:
    """Solve the echelon system for one right-hand side column.

    Free columns take the values given (default zero)."""
    x: dict[int, Fraction] = dict(free_values)
    for prow, pcol in reversed(pivots):
        acc = ZERO if rhs_col == _ZERO_RHS else Fraction(rows[prow][rhs_col])
        for j in range(pcol + 1, ncols):
            coef = rows[prow][j]
            if coef and j in x:
                acc -= coef * x[j]
        val = acc / rows[prow][pcol]
        if val != 0:
            x[pcol] = val
        else:
            x.pop(pcol, None)
    return Vector(ncols, {i: v for i, v in x.items() if v != 0})


def _normalize_first_nonzero(v: Vector) -> Vector:
    for _, value in v.entries():
        return (1 / value) * v
    return v


def solve(matrix: Matrix, rhs: Vector) -> SolveResult:
    """Solve ``matrix @ x = rhs`` exactly."""
    if rhs.dim != matrix.rows:
        raise DimensionError(f"rhs dim {rhs.dim} does not match {matrix.rows} rows")
    rows, width = _integer_rows(matrix, [rhs])
    pivots, origin = _bareiss(rows, matrix.cols)
    rank = len(pivots)
    for r in range(rank, matrix.rows):
        if rows[r][matrix.cols] != 0:
            return Inconsistent(witness_row=origin[r])
    particular = _back_substitute(rows, pivots, matrix.cols, matrix.cols, {})
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(matrix.cols) if c not in pivot_cols]
    if not free_cols:
        return Unique(particular)
    kernel = []
    for f in free_cols:
        vec = _back_substitute(rows, pivots, matrix.cols, _ZERO_RHS, {f: ONE})
        kernel.append(_normalize_first_nonzero(vec))
    return Affine(particular, tuple(kernel))


# sentinel column index for a zero right-hand side during back substitution
_ZERO_RHS = -1


def _echelon_of(matrix: Matrix) -> tuple[list[list[int]], list[tuple[int, int]], list[int]]:
    rows, _ = _integer_rows(matrix, [])
    pivots, origin = _bareiss(rows, matrix.cols)
    return rows, pivots, origin


def rank(matrix: Matrix) -> int:
    """Rank over the rationals."""
    _, pivots, _ = _echelon_of(matrix)
    return len(pivots)


def kernel_basis(matrix: Matrix) -> list[Vector]:
    """Basis of the null space, one vector per free column, each scaled so
    its first nonzero coordinate is one."""
    rows, pivots, _ = _echelon_of(matrix)
    pivot_cols = {c for _, c in pivots}
    out = []
    for f in range(matrix.cols):
        if f in pivot_cols:
            continue
        vec = _back_substitute(rows, pivots, matrix.cols, _ZERO_RHS, {f: ONE})
        out.append(_normalize_first_nonzero(vec))
    return out


def image_basis(matrix: Matrix) -> list[Vector]:
    """Basis of the column space: the original columns at pivot positions
    (the lexicographically first independent subset)."""
    _, pivots, _ = _echelon_of(matrix)
    return [matrix.column(c) for _, c in pivots]


def invert(matrix: Matrix) -> Matrix:
    """Two-sided inverse of a square matrix."""
    if matrix.rows != matrix.cols:
        raise DimensionError(f"cannot invert {matrix.rows}x{matrix.cols}")
    n = matrix.rows
    rows, width = _integer_rows(matrix, [Vector.unit(n, i) for i in range(n)])
    pivots, _ = _bareiss(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular", rank=len(pivots))
    data: dict[tuple[int, int], Fraction] = {}
    for j in range(n):
        col = _back_substitute(rows, pivots, n, n + j, {})
        for r, v in col.entries():
            data[(r, j)] = v
    return Matrix(n, n, data)


def span_basis(vectors: Iterable[Vector]) -> list[Vector]:
    """Deterministic basis of the span: the first independent vectors in
    input order (pivot columns of the stacked matrix)."""
    vecs = list(vectors)
    if not vecs:
        return []
    return image_basis(Matrix.from_columns(vecs))


def extend_to_standard_basis(subspace: Sequence[Vector], dim: int) -> list[int]:
    """Indices of standard basis vectors that extend ``subspace`` to a basis
    of the ambient space, chosen greedily in index order."""
    chosen: list[int] = []
    base = list(subspace)
    r = rank(Matrix.from_columns(base)) if base else 0
    for i in range(dim):
        candidate = base + [Vector.unit(dim, i)]
        if rank(Matrix.from_columns(candidate)) > r:
            base = candidate
            r += 1
            chosen.append(i)
        if r == dim:
            break
    if r != dim:
        raise DimensionError("vectors do not span a complementable subspace")
    return chosen


def subspace_contains(basis: Sequence[Vector], vector: Vector) -> bool:
    """Membership test: does ``vector`` lie in the span of ``basis``?"""
    base = list(basis)
    if vector.is_zero():
        return True
    if not base:
        return False
    m = Matrix.from_columns(base)
    return rank(Matrix.from_columns(base + [vector])) == rank(m)


def subspaces_equal(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    """Double-inclusion equality of two spans via rank checks."""
    av, bv = list(a), list(b)
    ra = rank(Matrix.from_columns(av)) if av else 0
    rb = rank(Matrix.from_columns(bv)) if bv else 0
    if ra != rb:
        return False
    joint = rank(Matrix.from_columns(av + bv)) if av + bv else 0
    return joint == ra


def coordinates_in_basis(basis: Sequence[Vector], vector: Vector) -> Vector:
    """Coordinates of ``vector`` in an independent ``basis`` (must lie in
    the span; raises DimensionError otherwise)."""
    result = solve(Matrix.from_columns(list(basis)), vector)
    if isinstance(result, Unique):
        return result.solution
    if isinstance(result, Affine):
        raise DimensionError("basis vectors are linearly dependent")
    raise DimensionError("vector does not lie in the span of the basis")


def outer(a: Vector, b: Vector) -> Vector:
    """Kronecker product of coordinate vectors, big-endian: the flat
    index of (i, j) is i * b.dim + j."""
    data: dict[int, Fraction] = {}
    for i, va in a.entries():
        for j, vb in b.entries():
            data[i * b.dim + j] = va * vb
    return Vector(a.dim * b.dim, data)


def kronecker(factors: Sequence[Matrix]) -> Matrix:
    """Kronecker product; row and column multi-indices are big-endian
    (leftmost factor varies slowest)."""
    if not factors:
        return Matrix.identity(1)
    out = factors[0]
    for m in factors[1:]:
        data: dict[tuple[int, int], Fraction] = {}
        for (r1, c1), v1 in out._data.items():
            for (r2, c2), v2 in m._data.items():
                data[(r1 * m.rows + r2, c1 * m.cols + c2)] = v1 * v2
        out = Matrix(out.rows * m.rows, out.cols * m.cols, data)
    return out
