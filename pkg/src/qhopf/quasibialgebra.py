"""Quasi-bialgebras: data, axiom verification, gauge twisting.

A quasi-bialgebra is an algebra together with a coproduct, a counit and an
invertible reassociator in the threefold tensor power that controls how
far the coproduct is from coassociative.  The verifier evaluates each
axiom on basis elements and reports the first failing tuple together with
both sides' coordinates; the report lists checks in a fixed order so its
rendering is reproducible byte for byte.

Twisting conjugates the coproduct by a counit-normalized invertible
element of the twofold power and transports the reassociator along; the
result is again a quasi-bialgebra over the same algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import _pool
from .algebra import Element, FinDimAlgebra, apply_linear_map, invert_element, tensor_of_maps
from .errors import DimensionError, DocumentError, InvalidGaugeError, NotInvertibleError
from .exactlin import Matrix, Vector


@dataclass(frozen=True)
class Witness:
    """First failing instance of a check: basis tuple plus both sides."""

    basis: tuple[int, ...]
    lhs: Vector
    rhs: Vector


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Witness | None = None
    informative: bool = False


@dataclass(frozen=True)
class VerificationReport:
    """Ordered list of named check outcomes for one subject."""

    subject: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informative)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def first_failure(
    cases: Iterable[tuple[tuple[int, ...], Element, Element]],
) -> Witness | None:
    """Scan cases in order; return a witness for the first lhs != rhs."""
    for basis, lhs, rhs in cases:
        if lhs != rhs:
            return Witness(basis, lhs.coords, rhs.coords)
    return None


def equation_check(
    name: str,
    cases: Iterable[tuple[tuple[int, ...], Element, Element]],
    informative: bool = False,
) -> CheckResult:
    w = first_failure(cases)
    return CheckResult(name, w is None, w, informative)


class QuasiBialgebra:
    """Algebra + coproduct + counit + invertible reassociator.

    The inverse reassociator is always computed here, never taken on
    trust; a supplied candidate is cross-checked against the computed one.
    """

    def __init__(
        self,
        algebra: FinDimAlgebra,
        coproduct: Matrix,
        counit: Matrix,
        reassociator: Element,
        reassociator_inv: Element | None = None,
    ):
        n = algebra.dim
        if coproduct.rows != n * n or coproduct.cols != n:
            raise DimensionError(f"coproduct must be {n * n}x{n}")
        if counit.rows != 1 or counit.cols != n:
            raise DimensionError(f"counit must be 1x{n}")
        if reassociator.algebra is not algebra or reassociator.arity != 3:
            raise DimensionError("reassociator must have arity 3 over the same algebra")
        self.algebra = algebra
        self.coproduct = coproduct
        self.counit = counit
        self.reassociator = reassociator
        self.reassociator_inv = invert_element(reassociator)
        if reassociator_inv is not None and reassociator_inv != self.reassociator_inv:
            raise DocumentError(
                "supplied inverse reassociator disagrees with the computed inverse"
            )

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def basis_element(self, i: int) -> Element:
        return self.algebra.basis_element(i)

    def unit_element(self, arity: int = 1) -> Element:
        return self.algebra.unit_element(arity)

    def identity_matrix(self) -> Matrix:
        return Matrix.identity(self.dim)

    def coproduct_of(self, x: Element) -> Element:
        if x.arity != 1:
            raise DimensionError("coproduct applies to arity-1 elements")
        return apply_linear_map(self.coproduct, x, out_arity=2)

    def counit_of(self, x: Element) -> Fraction:
        if x.arity != 1:
            raise DimensionError("counit applies to arity-1 elements")
        return (self.counit @ x.coords)[0]

    def __repr__(self) -> str:
        return f"QuasiBialgebra(dim={self.dim}, basis={self.algebra.basis_labels})"


def verify_quasi_bialgebra(q: QuasiBialgebra) -> VerificationReport:
    """Check every axiom on basis elements; deterministic check order."""
    n = q.dim
    I = q.identity_matrix()
    D = q.coproduct
    E = q.counit
    phi = q.reassociator
    phi_inv = q.reassociator_inv
    one = q.unit_element()

    def coproduct_map() -> CheckResult:
        def cases():
            yield (), apply_linear_map(D, one, out_arity=2), one.tensor(one)
            for i in range(n):
                di = q.coproduct_of(q.basis_element(i))
                for j in range(n):
                    prod = q.basis_element(i) * q.basis_element(j)
                    lhs = apply_linear_map(D, prod, out_arity=2)
                    rhs = di * q.coproduct_of(q.basis_element(j))
                    yield (i, j), lhs, rhs

        return equation_check("coproduct-algebra-map", cases())

    def counit_map() -> CheckResult:
        def cases():
            yield (), _scalar_elem(q, q.counit_of(one)), _scalar_elem(q, Fraction(1))
            for i in range(n):
                for j in range(n):
                    prod = q.basis_element(i) * q.basis_element(j)
                    lhs = _scalar_elem(q, (E @ prod.coords)[0])
                    rhs = _scalar_elem(
                        q, q.counit_of(q.basis_element(i)) * q.counit_of(q.basis_element(j))
                    )
                    yield (i, j), lhs, rhs

        return equation_check("counit-algebra-map", cases())

    def cocycle() -> CheckResult:
        lhs = apply_linear_map(tensor_of_maps([I, I, D]), phi, out_arity=4) * apply_linear_map(
            tensor_of_maps([D, I, I]), phi, out_arity=4
        )
        rhs = (
            one.tensor(phi)
            * apply_linear_map(tensor_of_maps([I, D, I]), phi, out_arity=4)
            * phi.tensor(one)
        )
        return equation_check("reassociator-cocycle", [((), lhs, rhs)])

    def counit_contractions() -> CheckResult:
        two = one.tensor(one)
        slots = [
            tensor_of_maps([E, I, I]),
            tensor_of_maps([I, E, I]),
            tensor_of_maps([I, I, E]),
        ]
        cases = [
            ((k,), apply_linear_map(m, phi, out_arity=2), two)
            for k, m in enumerate(slots)
        ]
        return equation_check("reassociator-counits", cases)

    def quasi_coassociativity() -> CheckResult:
        def cases():
            for a in range(n):
                da = q.coproduct_of(q.basis_element(a))
                lhs = apply_linear_map(tensor_of_maps([I, D]), da, out_arity=3) * phi
                rhs = phi * apply_linear_map(tensor_of_maps([D, I]), da, out_arity=3)
                yield (a,), lhs, rhs

        return equation_check("quasi-coassociativity", cases())

    def counit_left() -> CheckResult:
        def cases():
            for a in range(n):
                da = q.coproduct_of(q.basis_element(a))
                lhs = apply_linear_map(tensor_of_maps([E, I]), da, out_arity=1)
                yield (a,), lhs, q.basis_element(a)

        return equation_check("counit-law-left", cases())

    def counit_right() -> CheckResult:
        def cases():
            for a in range(n):
                da = q.coproduct_of(q.basis_element(a))
                lhs = apply_linear_map(tensor_of_maps([I, E]), da, out_arity=1)
                yield (a,), lhs, q.basis_element(a)

        return equation_check("counit-law-right", cases())

    def invertibility() -> CheckResult:
        three = q.unit_element(3)
        cases = [
            ((0,), phi * phi_inv, three),
            ((1,), phi_inv * phi, three),
        ]
        return equation_check("reassociator-invertible", cases)

    thunks: Sequence[Callable[[], CheckResult]] = [
        coproduct_map,
        counit_map,
        cocycle,
        counit_contractions,
        quasi_coassociativity,
        counit_left,
        counit_right,
        invertibility,
    ]
    checks = tuple(_pool.run_thunks(thunks))
    return VerificationReport(subject="quasi_bialgebra", checks=checks)


def _scalar_elem(q: QuasiBialgebra, value: Fraction) -> Element:
    """Embed a scalar as a multiple of the unit, for uniform witnesses."""
    return value * q.unit_element()


@dataclass(frozen=True)
class GaugeTransformation:
    """Invertible counit-normalized element of the twofold power."""

    f: Element
    f_inv: Element

    @staticmethod
    def from_element(f: Element) -> "GaugeTransformation":
        if f.arity != 2:
            raise DimensionError("gauge element must have arity 2")
        try:
            inv = invert_element(f)
        except NotInvertibleError as exc:
            raise InvalidGaugeError(f"gauge element is not invertible: {exc}") from exc
        return GaugeTransformation(f, inv)

    def inverse(self) -> "GaugeTransformation":
        return GaugeTransformation(self.f_inv, self.f)


def verify_gauge(q: QuasiBialgebra, gauge: GaugeTransformation) -> VerificationReport:
    """Invertibility plus both counit normalizations."""
    I = q.identity_matrix()
    E = q.counit
    one = q.unit_element()
    two = q.unit_element(2)
    checks = (
        equation_check(
            "gauge-invertible",
            [((0,), gauge.f * gauge.f_inv, two), ((1,), gauge.f_inv * gauge.f, two)],
        ),
        equation_check(
            "gauge-counit-left",
            [((), apply_linear_map(tensor_of_maps([E, I]), gauge.f, out_arity=1), one)],
        ),
        equation_check(
            "gauge-counit-right",
            [((), apply_linear_map(tensor_of_maps([I, E]), gauge.f, out_arity=1), one)],
        ),
    )
    return VerificationReport(subject="gauge", checks=checks)


def twist(q: QuasiBialgebra, gauge: GaugeTransformation) -> QuasiBialgebra:
    """Conjugate the coproduct and transport the reassociator.

    The twisted coproduct is F * coproduct(a) * F^{-1}; the twisted
    reassociator is
    (1 (x) F) * (id (x) coproduct)(F) * phi * (coproduct (x) id)(F^{-1}) * (F^{-1} (x) 1).
    """
    report = verify_gauge(q, gauge)
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        raise InvalidGaugeError(f"gauge checks failed: {', '.join(failed)}")
    n = q.dim
    I = q.identity_matrix()
    D = q.coproduct
    f, f_inv = gauge.f, gauge.f_inv
    one = q.unit_element()

    columns = []
    for c in range(n):
        twisted = f * q.coproduct_of(q.basis_element(c)) * f_inv
        columns.append(twisted.coords)
    new_coproduct = Matrix.from_columns(columns)

    new_reassociator = (
        one.tensor(f)
        * apply_linear_map(tensor_of_maps([I, D]), f, out_arity=3)
        * q.reassociator
        * apply_linear_map(tensor_of_maps([D, I]), f_inv, out_arity=3)
        * f_inv.tensor(one)
    )
    return QuasiBialgebra(q.algebra, new_coproduct, q.counit, new_reassociator)
