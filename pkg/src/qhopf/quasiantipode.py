"""Quasi-antipode triples and their relation to preantipodes.

A quasi-antipode is an antimultiplicative endomorphism s together with two
distinguished elements alpha and beta satisfying the four zigzag
cancellation laws.  Every triple yields a preantipode S(a) = beta * s(a) * alpha;
conversely S can be upgraded back to a triple along three routes:

* inverting the canonical map [a (x) b] -> a * S(b) on the quotient of the
  tensor square by the augmentation right ideal,
* directly when the reassociator is central (the result is then an
  ordinary Hopf algebra),
* from an ordinary antipode when the contracted element
  phi^1 * s(phi^2) * phi^3 is invertible.

Triples are unique up to conjugation: s' = u s(.) u^{-1}, alpha' = u alpha,
beta' = beta u^{-1} for an invertible u, found here by solving the linear
intertwining system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Element, apply_linear_map, invert_element, tensor_of_maps
from .errors import (
    CNotInvertibleError,
    DimensionError,
    InternalInconsistencyError,
    NotInvertibleError,
    NotRelatedError,
    PhiNotCentralError,
    XiNotInvertibleError,
    XiNotWellDefinedError,
)
from .exactlin import (
    Affine,
    Inconsistent,
    Matrix,
    Unique,
    Vector,
    extend_to_standard_basis,
    invert,
    rank,
    solve,
    span_basis,
)
from .preantipode import Preantipode, verify_preantipode
from .quasibialgebra import (
    CheckResult,
    QuasiBialgebra,
    VerificationReport,
    equation_check,
)


@dataclass(frozen=True)
class QuasiAntipode:
    """Triple (s, alpha, beta): s as a matrix, the elements as vectors."""

    s_matrix: Matrix
    alpha: Element
    beta: Element

    def apply(self, x: Element) -> Element:
        return x.algebra.element(self.s_matrix @ x.coords)


def verify_quasi_antipode(q: QuasiBialgebra, t: QuasiAntipode) -> VerificationReport:
    """Antimultiplicativity, both cancellation laws, both zigzags.

    Whether s fixes the unit is reported informatively; it is not an
    axiom and never affects the overall outcome."""
    n = q.dim
    s = t.apply
    alpha, beta = t.alpha, t.beta

    def antimultiplicative():
        for i in range(n):
            for j in range(n):
                lhs = s(q.basis_element(i) * q.basis_element(j))
                rhs = s(q.basis_element(j)) * s(q.basis_element(i))
                yield (i, j), lhs, rhs

    def left_cancellation():
        for a in range(n):
            acc = 0 * alpha
            for kl, d in q.coproduct_of(q.basis_element(a)).coords.entries():
                k, l = divmod(kl, n)
                acc = acc + d * (s(q.basis_element(k)) * alpha * q.basis_element(l))
            yield (a,), acc, q.counit_of(q.basis_element(a)) * alpha

    def right_cancellation():
        for a in range(n):
            acc = 0 * beta
            for kl, d in q.coproduct_of(q.basis_element(a)).coords.entries():
                k, l = divmod(kl, n)
                acc = acc + d * (q.basis_element(k) * beta * s(q.basis_element(l)))
            yield (a,), acc, q.counit_of(q.basis_element(a)) * beta

    zig = _zigzag(q, t, q.reassociator, forward=True)
    zag = _zigzag(q, t, q.reassociator_inv, forward=False)

    checks = (
        equation_check("antimultiplicative", antimultiplicative()),
        equation_check("left-cancellation", left_cancellation()),
        equation_check("right-cancellation", right_cancellation()),
        equation_check("reassociator-zigzag", [((), zig, q.unit_element())]),
        equation_check("inverse-reassociator-zigzag", [((), zag, q.unit_element())]),
        equation_check(
            "preserves-unit",
            [((), s(q.unit_element()), q.unit_element())],
            informative=True,
        ),
    )
    return VerificationReport(subject="quasi_antipode", checks=checks)


def _zigzag(q: QuasiBialgebra, t: QuasiAntipode, x: Element, forward: bool) -> Element:
    """phi^1 beta s(phi^2) alpha phi^3 (forward) or
    s(phi^1) alpha phi^2 beta s(phi^3) (backward) summed over x."""
    n = q.dim
    acc = 0 * t.alpha
    for uvw, c in x.coords.entries():
        u, rest = divmod(uvw, n * n)
        v, w = divmod(rest, n)
        if forward:
            term = (
                q.basis_element(u) * t.beta * t.apply(q.basis_element(v)) * t.alpha * q.basis_element(w)
            )
        else:
            term = (
                t.apply(q.basis_element(u)) * t.alpha * q.basis_element(v) * t.beta * t.apply(q.basis_element(w))
            )
        acc = acc + c * term
    return acc


def preantipode_from_quasi_antipode(q: QuasiBialgebra, t: QuasiAntipode) -> Preantipode:
    """S(a) = beta * s(a) * alpha."""
    columns = []
    for a in range(q.dim):
        columns.append((t.beta * t.apply(q.basis_element(a)) * t.alpha).coords)
    return Preantipode(Matrix.from_columns(columns))


# ---------------------------------------------------------------- quotient


@dataclass(frozen=True)
class QuotientSpace:
    """Ambient space modulo a subspace, with a deterministic section.

    The section representatives are the lexicographically first standard
    basis vectors independent of the subspace; projection then section is
    the identity on the quotient."""

    ambient_dim: int
    subspace_basis: tuple[Vector, ...]
    section_indices: tuple[int, ...]
    projection: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return len(self.section_indices)

    @staticmethod
    def from_generators(ambient_dim: int, generators: Sequence[Vector]) -> "QuotientSpace":
        subspace = span_basis(generators)
        chosen = extend_to_standard_basis(subspace, ambient_dim)
        columns = list(subspace) + [Vector.unit(ambient_dim, i) for i in chosen]
        inverse = invert(Matrix.from_columns(columns))
        k = len(subspace)
        # rows of the inverse past the subspace block express a vector's
        # coefficients on the section representatives
        proj_data = {
            (r - k, c): v for r, c, v in inverse.entries() if r >= k
        }
        projection = Matrix(len(chosen), ambient_dim, proj_data)
        section = Matrix.from_columns([Vector.unit(ambient_dim, i) for i in chosen])
        return QuotientSpace(
            ambient_dim=ambient_dim,
            subspace_basis=tuple(subspace),
            section_indices=tuple(chosen),
            projection=projection,
            section=section,
        )

    def project(self, v: Vector) -> Vector:
        return self.projection @ v

    def represent(self, coords: Vector) -> Vector:
        return self.section @ coords


def tensor_square_right_action(q: QuasiBialgebra, ab: Vector, x: int) -> Vector:
    """(a (x) b) . x = a x_(1) (x) b x_(2) on the tensor square."""
    n = q.dim
    out = q.algebra.tensor_element(2, Vector.zero(n * n))
    dx = q.coproduct_of(q.basis_element(x))
    ab_elem = q.algebra.tensor_element(2, ab)
    for kl, d in dx.coords.entries():
        k, l = divmod(kl, n)
        out = out + d * (ab_elem * q.algebra.basis_tensor((k, l)))
    return out.coords


def build_quotient(q: QuasiBialgebra) -> QuotientSpace:
    """Quotient of the tensor square by the span of
    (a (x) b) . x - counit(x) (a (x) b) over all basis triples."""
    n = q.dim
    generators = []
    for a in range(n):
        for b in range(n):
            ab = Vector.unit(n * n, a * n + b)
            for x in range(n):
                moved = tensor_square_right_action(q, ab, x)
                eps = q.counit_of(q.basis_element(x))
                generators.append(moved - eps * ab)
    return QuotientSpace.from_generators(n * n, generators)


def product_with_preantipode_matrix(q: QuasiBialgebra, s: Preantipode) -> Matrix:
    """Matrix of a (x) b -> a * S(b) on the tensor square."""
    n = q.dim
    columns = []
    for a in range(n):
        for b in range(n):
            columns.append((q.basis_element(a) * s.apply_basis(q, b)).coords)
    return Matrix.from_columns(columns)


def xi_matrix(q: QuasiBialgebra, s: Preantipode, quotient: QuotientSpace) -> Matrix:
    """Descend a (x) b -> a * S(b) to the quotient.

    Fails with XiNotWellDefinedError when the ambient map does not kill
    the subspace, which signals a left-absorption violation in S."""
    ambient = product_with_preantipode_matrix(q, s)
    for idx, gen in enumerate(quotient.subspace_basis):
        image = ambient @ gen
        if not image.is_zero():
            raise XiNotWellDefinedError(
                f"subspace generator {idx} maps to {image.format()}, not zero"
            )
    return ambient @ quotient.section


@dataclass(frozen=True)
class XiRecovery:
    """Quasi-antipode extracted by inverting the canonical quotient map."""

    antipode: QuasiAntipode
    quotient: QuotientSpace
    xi: Matrix
    unit_preimage: Vector  # ambient representative of the class mapping to 1
    antipode_report: VerificationReport
    preantipode_report: VerificationReport


def recover_quasi_antipode_via_xi(q: QuasiBialgebra, s: Preantipode) -> XiRecovery:
    """When the canonical map is bijective the triple is
    (a -> u^1 S(a u^2), 1, S(1)) with u^1 (x) u^2 representing the
    preimage of the unit."""
    n = q.dim
    quotient = build_quotient(q)
    xi = xi_matrix(q, s, quotient)
    xi_rank = rank(xi)
    if quotient.dim != n or xi_rank != n:
        raise XiNotInvertibleError(
            f"canonical map is {n}x{quotient.dim} of rank {xi_rank}, not bijective",
            rank=xi_rank,
        )
    preimage_coords = invert(xi) @ q.algebra.unit
    rep = quotient.represent(preimage_coords)

    columns = []
    for a in range(n):
        acc = 0 * q.unit_element()
        for uv, c in rep.entries():
            u, v = divmod(uv, n)
            inner = s.apply(q.basis_element(a) * q.basis_element(v))
            acc = acc + c * (q.basis_element(u) * inner)
        columns.append(acc.coords)
    triple = QuasiAntipode(
        s_matrix=Matrix.from_columns(columns),
        alpha=q.unit_element(),
        beta=s.apply(q.unit_element()),
    )
    antipode_report = verify_quasi_antipode(q, triple)
    preantipode_report = verify_preantipode(
        q, preantipode_from_quasi_antipode(q, triple)
    )
    if not antipode_report.passed or not preantipode_report.passed:
        raise InternalInconsistencyError(
            "recovered triple fails verification although the canonical map is bijective"
        )
    return XiRecovery(triple, quotient, xi, rep, antipode_report, preantipode_report)


# ------------------------------------------------------- central shortcut


@dataclass(frozen=True)
class CentralRecovery:
    antipode: QuasiAntipode
    hopf_report: VerificationReport


def hopf_from_central_phi(q: QuasiBialgebra, s: Preantipode) -> CentralRecovery:
    """With a central reassociator, a -> phi^1 S(a phi^2) phi^3 together
    with alpha = 1, beta = S(1) is a quasi-antipode and the underlying
    bialgebra is an ordinary Hopf algebra with that map as antipode."""
    n = q.dim
    if not q.algebra.is_central(q.reassociator):
        raise PhiNotCentralError("reassociator is not central in the threefold power")
    columns = []
    for a in range(n):
        acc = 0 * q.unit_element()
        for uvw, c in q.reassociator.coords.entries():
            u, rest = divmod(uvw, n * n)
            v, w = divmod(rest, n)
            inner = s.apply(q.basis_element(a) * q.basis_element(v))
            acc = acc + c * (q.basis_element(u) * inner * q.basis_element(w))
        columns.append(acc.coords)
    s_matrix = Matrix.from_columns(columns)
    triple = QuasiAntipode(s_matrix, q.unit_element(), s.apply(q.unit_element()))

    hopf_report = _ordinary_hopf_report(q, s_matrix, extra=[
        equation_check(
            "collapses-to-preantipode",
            [
                (
                    (a,),
                    triple.beta * triple.apply(q.basis_element(a)),
                    s.apply_basis(q, a),
                )
                for a in range(n)
            ],
        ),
    ])
    if not hopf_report.passed:
        raise InternalInconsistencyError(
            "central reassociator did not yield an ordinary Hopf algebra"
        )
    return CentralRecovery(triple, hopf_report)


def _ordinary_hopf_report(
    q: QuasiBialgebra, s_matrix: Matrix, extra: Sequence[CheckResult] = ()
) -> VerificationReport:
    """Coassociativity of the coproduct plus s being a convolution inverse
    of the identity."""
    n = q.dim
    I = q.identity_matrix()
    D = q.coproduct
    coassoc = equation_check(
        "coproduct-coassociative",
        [
            (
                (a,),
                apply_linear_map(
                    tensor_of_maps([D, I]), q.coproduct_of(q.basis_element(a)), out_arity=3
                ),
                apply_linear_map(
                    tensor_of_maps([I, D]), q.coproduct_of(q.basis_element(a)), out_arity=3
                ),
            )
            for a in range(n)
        ],
    )

    def conv(left: bool):
        for a in range(n):
            acc = 0 * q.unit_element()
            for kl, d in q.coproduct_of(q.basis_element(a)).coords.entries():
                k, l = divmod(kl, n)
                sk = q.algebra.element(s_matrix @ Vector.unit(n, k))
                sl = q.algebra.element(s_matrix @ Vector.unit(n, l))
                if left:
                    acc = acc + d * (sk * q.basis_element(l))
                else:
                    acc = acc + d * (q.basis_element(k) * sl)
            yield (a,), acc, q.counit_of(q.basis_element(a)) * q.unit_element()

    checks = (
        coassoc,
        equation_check("antipode-convolution-left", conv(left=True)),
        equation_check("antipode-convolution-right", conv(left=False)),
    ) + tuple(extra)
    return VerificationReport(subject="ordinary_hopf", checks=checks)


def verify_ordinary_hopf(q: QuasiBialgebra, s_matrix: Matrix) -> VerificationReport:
    """Public wrapper: is (algebra, coproduct, counit, s) an ordinary Hopf
    algebra when the reassociator is ignored?"""
    return _ordinary_hopf_report(q, s_matrix)


# ------------------------------------------------------ one-element twist


@dataclass(frozen=True)
class MajidResult:
    antipode: QuasiAntipode
    preantipode: Preantipode
    canonical_element: Element
    antipode_report: VerificationReport
    preantipode_report: VerificationReport


def majid_construction(q: QuasiBialgebra, s_matrix: Matrix) -> MajidResult:
    """From an ordinary antipode s on the underlying bialgebra, contract
    c = phi^1 s(phi^2) phi^3; when c is invertible, beta = c^{-1} is
    central and (s, 1, beta) is a quasi-antipode with preantipode
    beta * s(.)."""
    n = q.dim
    acc = 0 * q.unit_element()
    for uvw, coeff in q.reassociator.coords.entries():
        u, rest = divmod(uvw, n * n)
        v, w = divmod(rest, n)
        sv = q.algebra.element(s_matrix @ Vector.unit(n, v))
        acc = acc + coeff * (q.basis_element(u) * sv * q.basis_element(w))
    c = acc
    try:
        beta = invert_element(c)
    except NotInvertibleError as exc:
        raise CNotInvertibleError(
            f"contracted element {c.format()} is not invertible"
        ) from exc
    if not q.algebra.is_central(beta):
        raise InternalInconsistencyError(
            "inverse of the contracted element is not central"
        )
    triple = QuasiAntipode(s_matrix, q.unit_element(), beta)
    pre = preantipode_from_quasi_antipode(q, triple)
    return MajidResult(
        antipode=triple,
        preantipode=pre,
        canonical_element=c,
        antipode_report=verify_quasi_antipode(q, triple),
        preantipode_report=verify_preantipode(q, pre),
    )


# ------------------------------------------------------------- comparison


def compare_quasi_antipodes(
    q: QuasiBialgebra, t1: QuasiAntipode, t2: QuasiAntipode
) -> Element:
    """Find invertible u with s2 = u s1(.) u^{-1}, alpha2 = u alpha1 and
    beta2 = beta1 u^{-1}; raises NotRelatedError when none exists."""
    n = q.dim
    alg = q.algebra
    # unknown u: rows are the intertwining equations u*s1(e_i) = s2(e_i)*u
    # stacked over i, then u*alpha1 = alpha2
    data: dict[tuple[int, int], Fraction] = {}
    rhs_data: dict[int, Fraction] = {}
    row_base = 0
    for i in range(n):
        x = alg.element(t1.s_matrix @ Vector.unit(n, i))
        y = alg.element(t2.s_matrix @ Vector.unit(n, i))
        for r in range(n):
            left = alg.basis_element(r) * x  # coefficient column of u_r
            right = y * alg.basis_element(r)
            for tcoord, v in (left - right).coords.entries():
                data[(row_base + tcoord, r)] = data.get((row_base + tcoord, r), Fraction(0)) + v
        row_base += n
    for r in range(n):
        moved = alg.basis_element(r) * t1.alpha
        for tcoord, v in moved.coords.entries():
            data[(row_base + tcoord, r)] = data.get((row_base + tcoord, r), Fraction(0)) + v
    for tcoord, v in t2.alpha.coords.entries():
        rhs_data[row_base + tcoord] = v
    matrix = Matrix(row_base + n, n, {k: v for k, v in data.items() if v != 0})
    rhs = Vector(row_base + n, rhs_data)

    result = solve(matrix, rhs)
    if isinstance(result, Inconsistent):
        raise NotRelatedError(
            f"intertwining system is inconsistent (row {result.witness_row})"
        )
    candidate = alg.element(
        result.solution if isinstance(result, Unique) else result.particular
    )
    kernel_note = (
        "" if isinstance(result, Unique) else f" (system had a {len(result.kernel)}-dim kernel)"
    )
    try:
        inverse = invert_element(candidate)
    except NotInvertibleError as exc:
        raise NotRelatedError(f"connecting element is singular{kernel_note}") from exc
    if t1.beta * inverse != t2.beta:
        raise NotRelatedError(f"beta elements are not conjugate{kernel_note}")
    return candidate
