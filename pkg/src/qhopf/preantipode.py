"""Preantipode solving and verification.

A preantipode is a linear endomorphism S of the algebra satisfying, for
all a and b,

* left absorption:   a_(1) * S(b * a_(2)) = counit(a) * S(b)
* right absorption:  S(a_(1) * b) * a_(2) = counit(a) * S(b)
* contraction:       phi^1 * S(phi^2) * phi^3 = 1

where the first two use the coproduct legs of a and the last contracts S
over the middle slot of the reassociator.  All three conditions are linear
in S, so existence reduces to one exact linear system in the n^2 matrix
entries: absorption contributes n coordinate equations per basis pair
(left block first, then right, each ordered lexicographically by
(a, b, coordinate)), the contraction contributes the final n rows.  A
preantipode is unique when it exists, so a solvable system with a kernel
is evidence of a bug, never a valid answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import Element
from .errors import InternalInconsistencyError
from .exactlin import Affine, Inconsistent, Matrix, Unique, Vector, solve
from .quasibialgebra import (
    CheckResult,
    GaugeTransformation,
    QuasiBialgebra,
    VerificationReport,
    equation_check,
)

AXIOM_LEFT = "left-absorption"
AXIOM_RIGHT = "right-absorption"
AXIOM_CONTRACTION = "reassociator-contraction"


@dataclass(frozen=True)
class Preantipode:
    """Matrix of S in the algebra basis (column c holds S(e_c))."""

    matrix: Matrix

    def apply(self, x: Element) -> Element:
        return x.algebra.element(self.matrix @ x.coords)

    def apply_basis(self, q: QuasiBialgebra, i: int) -> Element:
        return q.algebra.element(self.matrix.column(i))


@dataclass(frozen=True)
class EquationRef:
    """Human-readable address of one scalar equation in the system."""

    axiom: str
    a: int | None
    b: int | None
    coordinate: int
    row: int

    def describe(self, q: QuasiBialgebra) -> str:
        if self.axiom == AXIOM_CONTRACTION:
            return f"{self.axiom}, coordinate '{q.algebra.label(self.coordinate)}' (row {self.row})"
        return (
            f"{self.axiom} at a='{q.algebra.label(self.a)}', b='{q.algebra.label(self.b)}', "
            f"coordinate '{q.algebra.label(self.coordinate)}' (row {self.row})"
        )


@dataclass(frozen=True)
class Found:
    preantipode: Preantipode


@dataclass(frozen=True)
class NotFound:
    witness: EquationRef


@dataclass(frozen=True)
class NonUnique:
    """Solvable with free parameters: impossible for a verified input,
    so this always indicates an internal inconsistency."""

    kernel_dim: int


PreantipodeResult = Union[Found, NotFound, NonUnique]


def equation_ref(q: QuasiBialgebra, row: int) -> EquationRef:
    n = q.dim
    block = n * n * n
    if row < block:
        return EquationRef(AXIOM_LEFT, row // (n * n), (row // n) % n, row % n, row)
    if row < 2 * block:
        r = row - block
        return EquationRef(AXIOM_RIGHT, r // (n * n), (r // n) % n, r % n, row)
    return EquationRef(AXIOM_CONTRACTION, None, None, row - 2 * block, row)


def assemble_preantipode_system(q: QuasiBialgebra) -> tuple[Matrix, Vector]:
    """Coefficient matrix and right-hand side; unknown (r, c) maps to
    column r*n + c and holds the e_r coefficient of S(e_c)."""
    n = q.dim
    alg = q.algebra
    left_mul = [Matrix.from_columns([alg.mult_basis(k, r) for r in range(n)]) for k in range(n)]
    right_mul = [Matrix.from_columns([alg.mult_basis(r, l) for r in range(n)]) for l in range(n)]
    rows = 2 * n**3 + n
    data: dict[tuple[int, int], Fraction] = {}

    def add(row: int, r: int, c: int, value: Fraction) -> None:
        if value == 0:
            return
        key = (row, r * n + c)
        s = data.get(key, Fraction(0)) + value
        if s == 0:
            data.pop(key, None)
        else:
            data[key] = s

    for i in range(n):
        delta_i = q.coproduct_of(q.basis_element(i))
        eps_i = q.counit_of(q.basis_element(i))
        for j in range(n):
            base_left = i * n * n + j * n
            base_right = n**3 + base_left
            for kl, d in delta_i.coords.entries():
                k, l = divmod(kl, n)
                # left: e_k * S(e_j e_l); the product vector selects columns c
                for c, vc in alg.mult_basis(j, l).entries():
                    for t, r, w in left_mul[k].entries():
                        add(base_left + t, r, c, d * vc * w)
                # right: S(e_k e_j) * e_l
                for c, vc in alg.mult_basis(k, j).entries():
                    for t, r, w in right_mul[l].entries():
                        add(base_right + t, r, c, d * vc * w)
            if eps_i != 0:
                for t in range(n):
                    add(base_left + t, t, j, -eps_i)
                    add(base_right + t, t, j, -eps_i)

    base_phi = 2 * n**3
    for uvw, cphi in q.reassociator.coords.entries():
        u, rest = divmod(uvw, n * n)
        v, w = divmod(rest, n)
        for r in range(n):
            prod = (q.basis_element(u) * q.basis_element(r)) * q.basis_element(w)
            for t, value in prod.coords.entries():
                add(base_phi + t, r, v, cphi * value)

    rhs = Vector(rows, {base_phi + t: val for t, val in alg.unit.entries()})
    return Matrix(rows, n * n, data), rhs


def solve_preantipode(q: QuasiBialgebra) -> PreantipodeResult:
    """Classify the linear system; assumes q verifies as a quasi-bialgebra."""
    n = q.dim
    matrix, rhs = assemble_preantipode_system(q)
    result = solve(matrix, rhs)
    if isinstance(result, Inconsistent):
        return NotFound(equation_ref(q, result.witness_row))
    if isinstance(result, Affine):
        return NonUnique(kernel_dim=len(result.kernel))
    s = Matrix(n, n, {divmod(idx, n): val for idx, val in result.solution.entries()})
    return Found(Preantipode(s))


def require_preantipode(q: QuasiBialgebra) -> Preantipode:
    """Solve and unwrap; NonUnique raises, NotFound raises with the witness."""
    result = solve_preantipode(q)
    if isinstance(result, NonUnique):
        raise InternalInconsistencyError(
            f"preantipode system has a {result.kernel_dim}-dimensional kernel; "
            "uniqueness is violated, which indicates an invalid input or a bug"
        )
    if isinstance(result, NotFound):
        raise InternalInconsistencyError(
            f"no preantipode exists: contradiction at {result.witness.describe(q)}"
        )
    return result.preantipode


def verify_preantipode(q: QuasiBialgebra, s: Preantipode) -> VerificationReport:
    """Pointwise check of both absorption laws and the contraction."""
    n = q.dim

    def left_cases():
        for i in range(n):
            delta_i = q.coproduct_of(q.basis_element(i))
            eps_i = q.counit_of(q.basis_element(i))
            for j in range(n):
                acc = _zero(q)
                for kl, d in delta_i.coords.entries():
                    k, l = divmod(kl, n)
                    inner = s.apply(q.algebra.element(q.algebra.mult_basis(j, l)))
                    acc = acc + d * (q.basis_element(k) * inner)
                yield (i, j), acc, eps_i * s.apply_basis(q, j)

    def right_cases():
        for i in range(n):
            delta_i = q.coproduct_of(q.basis_element(i))
            eps_i = q.counit_of(q.basis_element(i))
            for j in range(n):
                acc = _zero(q)
                for kl, d in delta_i.coords.entries():
                    k, l = divmod(kl, n)
                    inner = s.apply(q.algebra.element(q.algebra.mult_basis(k, j)))
                    acc = acc + d * (inner * q.basis_element(l))
                yield (i, j), acc, eps_i * s.apply_basis(q, j)

    contraction = contract_through(q, s, q.reassociator)
    checks = (
        equation_check(AXIOM_LEFT, left_cases()),
        equation_check(AXIOM_RIGHT, right_cases()),
        equation_check(AXIOM_CONTRACTION, [((), contraction, q.unit_element())]),
    )
    return VerificationReport(subject="preantipode", checks=checks)


def contract_through(q: QuasiBialgebra, s: Preantipode, x: Element) -> Element:
    """x^1 * S(x^2) * x^3 for an arity-3 element x."""
    n = q.dim
    acc = _zero(q)
    for uvw, c in x.coords.entries():
        u, rest = divmod(uvw, n * n)
        v, w = divmod(rest, n)
        acc = acc + c * (q.basis_element(u) * s.apply_basis(q, v) * q.basis_element(w))
    return acc


def check_derived_identities(q: QuasiBialgebra, s: Preantipode) -> VerificationReport:
    """Consequences of the defining equations, checked independently:
    both convolutions collapse to counit(a) * S(1), the counit is
    preserved, and contracting S through the inverse reassociator in the
    outer slots returns S(1)."""
    n = q.dim
    s_one = s.apply(q.unit_element())

    def conv_right():
        for a in range(n):
            acc = _zero(q)
            for kl, d in q.coproduct_of(q.basis_element(a)).coords.entries():
                k, l = divmod(kl, n)
                acc = acc + d * (q.basis_element(k) * s.apply_basis(q, l))
            yield (a,), acc, q.counit_of(q.basis_element(a)) * s_one

    def conv_left():
        for a in range(n):
            acc = _zero(q)
            for kl, d in q.coproduct_of(q.basis_element(a)).coords.entries():
                k, l = divmod(kl, n)
                acc = acc + d * (s.apply_basis(q, k) * q.basis_element(l))
            yield (a,), acc, q.counit_of(q.basis_element(a)) * s_one

    def counit_preserved():
        for a in range(n):
            lhs = q.counit_of(s.apply_basis(q, a)) * q.unit_element()
            rhs = q.counit_of(q.basis_element(a)) * q.unit_element()
            yield (a,), lhs, rhs

    inv = q.reassociator_inv
    acc = _zero(q)
    for uvw, c in inv.coords.entries():
        u, rest = divmod(uvw, n * n)
        v, w = divmod(rest, n)
        acc = acc + c * (s.apply_basis(q, u) * q.basis_element(v) * s.apply_basis(q, w))

    checks = (
        equation_check("convolution-right-collapses", conv_right()),
        equation_check("convolution-left-collapses", conv_left()),
        equation_check("counit-preserved", counit_preserved()),
        equation_check("inverse-reassociator-outer-contraction", [((), acc, s_one)]),
    )
    return VerificationReport(subject="preantipode-derived", checks=checks)


def twist_preantipode(
    q: QuasiBialgebra, gauge: GaugeTransformation, s: Preantipode
) -> Preantipode:
    """Transport S along a gauge: the twisted map sends a to
    F^1 * S(f^1 * a * F^2) * f^2, with f the inverse gauge."""
    n = q.dim
    columns = []
    for a in range(n):
        acc = _zero(q)
        for ij, cf in gauge.f.coords.entries():
            i, j = divmod(ij, n)
            for kl, cg in gauge.f_inv.coords.entries():
                k, l = divmod(kl, n)
                inner = q.basis_element(k) * q.basis_element(a) * q.basis_element(j)
                acc = acc + (cf * cg) * (
                    q.basis_element(i) * s.apply(inner) * q.basis_element(l)
                )
        columns.append(acc.coords)
    return Preantipode(Matrix.from_columns(columns))


def _zero(q: QuasiBialgebra) -> Element:
    return q.algebra.element(Vector.zero(q.dim))
