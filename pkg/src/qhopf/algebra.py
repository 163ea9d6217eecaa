"""Finite-dimensional associative algebras over the rationals.

An algebra is a basis-labelled multiplication table of exact structure
constants.  Associativity and unitality are verified when the table is
built: every later axiom check silently assumes both, so failing fast here
beats chasing wrong answers downstream.

Elements of tensor powers are stored as sparse coordinate vectors with a
big-endian multi-index (the flat index of ``e_{i1} (x) ... (x) e_{ik}`` is
``i1*n**(k-1) + ... + ik``) and multiplied factor-wise straight from the
base structure constants, so powers never need materialized tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    AlgebraAxiomError,
    DimensionError,
    NotInvertibleError,
    OneSidedInverseError,
)
from .exactlin import (
    Affine,
    Inconsistent,
    Matrix,
    Unique,
    Vector,
    format_scalar,
    kronecker,
    outer,
    solve,
)


def _digits(flat: int, base: int, width: int) -> tuple[int, ...]:
    out = [0] * width
    for p in range(width - 1, -1, -1):
        flat, out[p] = divmod(flat, base)
    return tuple(out)


def _flat(digits: Sequence[int], base: int) -> int:
    out = 0
    for d in digits:
        out = out * base + d
    return out


class FinDimAlgebra:
    """Unital associative algebra given by structure constants."""

    def __init__(
        self,
        basis_labels: Sequence[str],
        mult: Sequence[Sequence[Vector]],
        unit: Vector | None = None,
        *,
        _assume_valid: bool = False,
    ):
        self.basis_labels = tuple(basis_labels)
        n = len(self.basis_labels)
        if len(mult) != n or any(len(row) != n for row in mult):
            raise DimensionError(f"multiplication table must be {n}x{n}")
        for row in mult:
            for v in row:
                if v.dim != n:
                    raise DimensionError("structure constants of wrong dimension")
        self._mult = tuple(tuple(row) for row in mult)
        self.unit = self._find_unit() if unit is None else unit
        if self.unit.dim != n:
            raise DimensionError("unit vector of wrong dimension")
        self._power_cache: dict[int, "FinDimAlgebra"] = {1: self}
        if not _assume_valid:
            self.verify_unitality()
            self.verify_associativity()

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def label(self, i: int) -> str:
        return self.basis_labels[i]

    def mult_basis(self, i: int, j: int) -> Vector:
        return self._mult[i][j]

    def _find_unit(self) -> Vector:
        # the unit solves u * e_j = e_j for all j; left-unitality of the
        # candidate is rechecked by verify_unitality
        n = self.dim
        data = {}
        for j in range(n):
            for i in range(n):
                for t, v in self._mult[i][j].entries():
                    data[(j * n + t, i)] = v
        rhs = Vector(n * n, {j * n + j: Fraction(1) for j in range(n)})
        result = solve(Matrix(n * n, n, data), rhs)
        if not isinstance(result, Unique):
            raise AlgebraAxiomError("multiplication table has no two-sided unit")
        return result.solution

    def verify_unitality(self) -> None:
        for j in range(self.dim):
            e = Vector.unit(self.dim, j)
            left = self.element(self.unit) * self.basis_element(j)
            right = self.basis_element(j) * self.element(self.unit)
            if left.coords != e or right.coords != e:
                raise AlgebraAxiomError(
                    f"unit fails on basis element {self.label(j)}"
                )

    def verify_associativity(self) -> None:
        n = self.dim
        for i in range(n):
            ei = self.basis_element(i)
            for j in range(n):
                ij = ei * self.basis_element(j)
                for k in range(n):
                    lhs = ij * self.basis_element(k)
                    rhs = ei * (self.basis_element(j) * self.basis_element(k))
                    if lhs != rhs:
                        raise AlgebraAxiomError(
                            "associativity fails at basis triple "
                            f"({self.label(i)}, {self.label(j)}, {self.label(k)}): "
                            f"{lhs.format()} != {rhs.format()}"
                        )

    # ------------------------------------------------------------ elements

    def element(self, coords: Union[Vector, Sequence]) -> "Element":
        vec = coords if isinstance(coords, Vector) else Vector.from_dense(coords)
        return Element(self, 1, vec)

    def basis_element(self, i: int) -> "Element":
        return Element(self, 1, Vector.unit(self.dim, i))

    def unit_element(self, arity: int = 1) -> "Element":
        out = self.unit
        for _ in range(arity - 1):
            out = outer(out, self.unit)
        return Element(self, arity, out)

    def tensor_element(self, arity: int, coords: Union[Vector, Sequence]) -> "Element":
        vec = coords if isinstance(coords, Vector) else Vector.from_dense(coords)
        if vec.dim != self.dim**arity:
            raise DimensionError(
                f"expected dim {self.dim**arity} for arity {arity}, got {vec.dim}"
            )
        return Element(self, arity, vec)

    def basis_tensor(self, indices: Sequence[int]) -> "Element":
        flat = _flat(indices, self.dim)
        return Element(self, len(indices), Vector.unit(self.dim ** len(indices), flat))

    def tensor_power(self, k: int) -> "FinDimAlgebra":
        """The k-fold tensor power as a plain algebra.

        Associativity holds factor by factor, so re-verification is skipped.
        """
        if k < 1:
            raise DimensionError(f"tensor power arity must be >= 1, got {k}")
        cached = self._power_cache.get(k)
        if cached is not None:
            return cached
        n = self.dim
        labels = [
            "(x)".join(self.label(d) for d in _digits(flat, n, k))
            for flat in range(n**k)
        ]
        mult = [
            [
                (self.basis_tensor(_digits(a, n, k)) * self.basis_tensor(_digits(b, n, k))).coords
                for b in range(n**k)
            ]
            for a in range(n**k)
        ]
        power = FinDimAlgebra(labels, mult, self.unit_element(k).coords, _assume_valid=True)
        self._power_cache[k] = power
        return power

    def same_structure(self, other: "FinDimAlgebra") -> bool:
        """Same presentation: equal labels, multiplication table and unit.

        Elements built over independently constructed but identical
        presentations compare equal, so builders need not share objects.
        """
        return self is other or (
            self.basis_labels == other.basis_labels
            and self.unit == other.unit
            and self._mult == other._mult
        )

    def is_central(self, x: "Element") -> bool:
        """Does x commute with every basis tensor of its arity?"""
        k = x.arity
        for flat in range(self.dim**k):
            e = self.basis_tensor(_digits(flat, self.dim, k))
            if x * e != e * x:
                return False
        return True

    def __repr__(self) -> str:
        return f"FinDimAlgebra(dim={self.dim}, basis={self.basis_labels})"


class Element:
    """Element of a tensor power of a fixed algebra."""

    __slots__ = ("algebra", "arity", "coords")

    def __init__(self, algebra: FinDimAlgebra, arity: int, coords: Vector):
        if arity < 1:
            raise DimensionError(f"arity must be >= 1, got {arity}")
        if coords.dim != algebra.dim**arity:
            raise DimensionError(
                f"coords dim {coords.dim} does not match arity {arity} over dim {algebra.dim}"
            )
        self.algebra = algebra
        self.arity = arity
        self.coords = coords

    def _check_compatible(self, other: "Element") -> None:
        if not self.algebra.same_structure(other.algebra):
            raise DimensionError("elements of structurally different algebras")
        if self.arity != other.arity:
            raise DimensionError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        return Element(self.algebra, self.arity, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        return Element(self.algebra, self.arity, self.coords - other.coords)

    def __rmul__(self, c) -> "Element":
        return Element(self.algebra, self.arity, Fraction(c) * self.coords)

    def __neg__(self) -> "Element":
        return (-1) * self

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_compatible(other)
        n = self.algebra.dim
        k = self.arity
        out: dict[int, Fraction] = {}
        for fi, cx in self.coords.entries():
            I = _digits(fi, n, k)
            for fj, cy in other.coords.entries():
                J = _digits(fj, n, k)
                _accumulate_product(self.algebra, I, J, cx * cy, out)
        return Element(self.algebra, k, Vector(n**k, out))

    def tensor(self, other: "Element") -> "Element":
        if not self.algebra.same_structure(other.algebra):
            raise DimensionError("elements of structurally different algebras")
        return Element(
            self.algebra,
            self.arity + other.arity,
            outer(self.coords, other.coords),
        )

    def is_zero(self) -> bool:
        return self.coords.is_zero()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Element)
            and self.arity == other.arity
            and self.coords == other.coords
            and self.algebra.same_structure(other.algebra)
        )

    def __hash__(self):
        return hash((self.algebra.basis_labels, self.arity, self.coords))

    def format(self) -> str:
        """Human-readable sum of labelled basis tensors."""
        if self.coords.is_zero():
            return "0"
        n = self.algebra.dim
        parts = []
        for flat, c in self.coords.entries():
            label = "(x)".join(self.algebra.label(d) for d in _digits(flat, n, self.arity))
            if c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{format_scalar(c)}*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Element(arity={self.arity}, {self.format()})"


def _accumulate_product(
    algebra: FinDimAlgebra,
    left: Sequence[int],
    right: Sequence[int],
    coeff: Fraction,
    out: dict[int, Fraction],
) -> None:
    """Add coeff * (e_left * e_right) to ``out``, expanding factor-wise."""
    n = algebra.dim
    partial = [(0, coeff)]
    for i, j in zip(left, right):
        factor = algebra.mult_basis(i, j)
        nxt = []
        for prefix, c in partial:
            for idx, cv in factor.entries():
                nxt.append((prefix * n + idx, c * cv))
        partial = nxt
        if not partial:
            return
    for flat, c in partial:
        s = out.get(flat, Fraction(0)) + c
        if s == 0:
            out.pop(flat, None)
        else:
            out[flat] = s


def multiply(x: Element, y: Element) -> Element:
    """Product of two elements of the same tensor power."""
    return x * y


def invert_element(x: Element) -> Element:
    """Two-sided inverse: solve x*y = 1 as a linear system, then confirm
    y*x = 1."""
    algebra = x.algebra
    n = algebra.dim
    size = n**x.arity
    columns = []
    for flat in range(size):
        basis = algebra.basis_tensor(_digits(flat, n, x.arity))
        columns.append((x * basis).coords)
    one = algebra.unit_element(x.arity)
    result = solve(Matrix.from_columns(columns), one.coords)
    if isinstance(result, (Inconsistent, Affine)):
        raise NotInvertibleError(f"element has no right inverse: {x.format()}")
    y = Element(algebra, x.arity, result.solution)
    if y * x != one:
        raise OneSidedInverseError(
            f"right inverse of {x.format()} is not a left inverse"
        )
    return y


def apply_linear_map(f: Matrix, x: Element, out_arity: int | None = None) -> Element:
    """Apply a matrix to an element's coordinates.

    The result arity is inferred from the row count when it is an exact
    power of the algebra dimension; pass ``out_arity`` to disambiguate
    (required when the algebra is one-dimensional)."""
    if f.cols != x.coords.dim:
        raise DimensionError(
            f"map expects dim {f.cols}, element has dim {x.coords.dim}"
        )
    n = x.algebra.dim
    if out_arity is None:
        if n == 1:
            out_arity = x.arity
        else:
            k, size = 1, n
            while size < f.rows:
                size *= n
                k += 1
            if size != f.rows:
                raise DimensionError(
                    f"row count {f.rows} is not a power of the algebra dimension {n}"
                )
            out_arity = k
    return Element(x.algebra, out_arity, f @ x.coords)


def tensor_of_maps(factors: Sequence[Matrix]) -> Matrix:
    """Tensor (Kronecker) product of coordinate maps, big-endian layout."""
    return kronecker(list(factors))
