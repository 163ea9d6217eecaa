from fractions import Fraction

import pytest

from qhopf import exactlin as ex
from qhopf.errors import InternalInconsistencyError
from qhopf.examples import h2, h2_gauge, nonhopf_monoid, order_two_group, sweedler_h4
from qhopf.preantipode import (
    EquationRef,
    Found,
    NotFound,
    assemble_preantipode_system,
    check_derived_identities,
    equation_ref,
    require_preantipode,
    solve_preantipode,
    twist_preantipode,
    verify_preantipode,
)
from qhopf.quasibialgebra import twist

import oracles


def F(a, b=1):
    return Fraction(a, b)


def brute_force_preantipode(q):
    """Set up the defining equations from scratch and hand them to the
    naive solver.  Unknown S[r][c] (the e_r coefficient of S(e_c)) lives
    at column r*n + c.  Shares nothing with the package's assembler.
    """
    n = q.dim
    mult = [[q.algebra.mult_basis(i, j).to_dense() for j in range(n)] for i in range(n)]
    cop = [q.coproduct.column(a).to_dense() for a in range(n)]
    eps = [q.counit_of(q.basis_element(i)) for i in range(n)]
    phi = q.reassociator.coords.to_dense()

    rows, rhs = [], []
    # a_1 S(b a_2) = eps(a) S(b), one row per (a, b, coordinate)
    for a in range(n):
        for b in range(n):
            for t in range(n):
                row = [F(0)] * (n * n)
                for a1 in range(n):
                    for a2 in range(n):
                        d = cop[a][a1 * n + a2]
                        if d == 0:
                            continue
                        for c in range(n):
                            bc = mult[b][a2][c]
                            if bc == 0:
                                continue
                            for r in range(n):
                                row[r * n + c] += d * bc * mult[a1][r][t]
                row[t * n + b] -= eps[a]
                rows.append(row)
                rhs.append(F(0))
    # S(a_1 b) a_2 = eps(a) S(b)
    for a in range(n):
        for b in range(n):
            for t in range(n):
                row = [F(0)] * (n * n)
                for a1 in range(n):
                    for a2 in range(n):
                        d = cop[a][a1 * n + a2]
                        if d == 0:
                            continue
                        for c in range(n):
                            ab = mult[a1][b][c]
                            if ab == 0:
                                continue
                            for r in range(n):
                                row[r * n + c] += d * ab * mult[r][a2][t]
                row[t * n + b] -= eps[a]
                rows.append(row)
                rhs.append(F(0))
    # Phi^1 S(Phi^2) Phi^3 = 1
    unit = q.algebra.unit.to_dense()
    for t in range(n):
        row = [F(0)] * (n * n)
        for u in range(n):
            for v in range(n):
                for w in range(n):
                    c = phi[(u * n + v) * n + w]
                    if c == 0:
                        continue
                    for r in range(n):
                        for m in range(n):
                            row[r * n + v] += c * mult[u][r][m] * mult[m][w][t]
        rows.append(row)
        rhs.append(unit[t])
    return rows, rhs


def solved_matrix(q):
    result = solve_preantipode(q)
    assert isinstance(result, Found)
    return result.preantipode.matrix


# ------------------------------------------------- independent dual route


@pytest.mark.parametrize(
    "build",
    [lambda: order_two_group()[0], lambda: h2()[0], lambda: sweedler_h4()[0]],
    ids=["group", "h2", "h4"],
)
def test_solution_matches_naive_solver(build):
    q = build()
    n = q.dim
    rows, rhs = brute_force_preantipode(q)
    naive = oracles.naive_solve(rows, rhs)
    assert naive is not None
    assert oracles.naive_kernel(rows, n * n) == []
    ours = solved_matrix(q)
    assert [ours[divmod(i, n)] for i in range(n * n)] == naive


@pytest.mark.parametrize(
    "build",
    [
        lambda: order_two_group()[0],
        lambda: h2()[0],
        lambda: sweedler_h4()[0],
        lambda: twist(h2()[0], h2_gauge()),
    ],
    ids=["group", "h2", "h4", "h2-twisted"],
)
def test_system_has_trivial_kernel(build):
    q = build()
    matrix, _ = assemble_preantipode_system(q)
    assert ex.kernel_basis(matrix) == []


# ------------------------------------------------------------ frozen values


def test_h2_preantipode_swaps_basis():
    q, _ = h2()
    assert solved_matrix(q).to_rows() == [[0, 1], [1, 0]]


def test_group_preantipode_is_inversion():
    q, _ = order_two_group()
    assert solved_matrix(q) == ex.Matrix.identity(2)


def test_h4_preantipode():
    q, _ = sweedler_h4()
    assert solved_matrix(q).to_rows() == [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ]


def test_system_shape():
    q, _ = h2()
    matrix, rhs = assemble_preantipode_system(q)
    assert (matrix.rows, matrix.cols) == (2 * 2**3 + 2, 4)
    assert rhs.to_dense() == [0] * 16 + [1, 0]


# --------------------------------------------------------------- reports


@pytest.mark.parametrize(
    "build",
    [lambda: order_two_group()[0], lambda: h2()[0], lambda: sweedler_h4()[0]],
    ids=["group", "h2", "h4"],
)
def test_verification_and_derived_identities(build):
    q = build()
    s = require_preantipode(q)
    report = verify_preantipode(q, s)
    assert report.passed
    assert tuple(c.name for c in report.checks) == (
        "left-absorption",
        "right-absorption",
        "reassociator-contraction",
    )
    derived = check_derived_identities(q, s)
    assert derived.passed
    assert tuple(c.name for c in derived.checks) == (
        "convolution-right-collapses",
        "convolution-left-collapses",
        "counit-preserved",
        "inverse-reassociator-outer-contraction",
    )


def test_wrong_matrix_fails_verification():
    q, _ = h2()
    from qhopf.preantipode import Preantipode

    report = verify_preantipode(q, Preantipode(ex.Matrix.identity(2)))
    assert not report.passed
    assert not report.check("reassociator-contraction").passed


# -------------------------------------------------------- the monoid case


def test_monoid_has_no_preantipode():
    result = solve_preantipode(nonhopf_monoid())
    assert isinstance(result, NotFound)
    assert result.witness == EquationRef(
        axiom="reassociator-contraction", a=None, b=None, coordinate=0, row=16
    )


def test_monoid_witness_description():
    q = nonhopf_monoid()
    result = solve_preantipode(q)
    assert result.witness.describe(q) == "reassociator-contraction, coordinate '1' (row 16)"


def test_monoid_witness_is_reproducible():
    runs = {repr(solve_preantipode(nonhopf_monoid()).witness) for _ in range(3)}
    assert len(runs) == 1


def test_require_raises_with_witness_location():
    with pytest.raises(InternalInconsistencyError) as exc:
        require_preantipode(nonhopf_monoid())
    assert "reassociator-contraction" in str(exc.value)
    assert "row 16" in str(exc.value)


def test_equation_ref_block_layout():
    q, _ = h2()
    assert equation_ref(q, 0).axiom == "left-absorption"
    assert equation_ref(q, 5) == EquationRef("left-absorption", 1, 0, 1, 5)
    assert equation_ref(q, 8).axiom == "right-absorption"
    assert equation_ref(q, 16) == EquationRef("reassociator-contraction", None, None, 0, 16)
    assert equation_ref(q, 17).coordinate == 1


def test_absorption_witness_description_quotes_labels():
    q, _ = h2()
    text = EquationRef("left-absorption", 0, 1, 1, 3).describe(q)
    assert text == "left-absorption at a='1', b='g', coordinate 'g' (row 3)"


# ------------------------------------------------------------ gauge twist


def test_twisted_preantipode_matches_resolving():
    q, _ = h2()
    g = h2_gauge()
    s = require_preantipode(q)
    transported = twist_preantipode(q, g, s)
    assert transported.matrix.to_rows() == [[0, 1], [1, 0]]
    assert transported.matrix == solved_matrix(twist(q, g))


def test_twist_preantipode_round_trip():
    q, _ = h2()
    g = h2_gauge()
    s = require_preantipode(q)
    qt = twist(q, g)
    back = twist_preantipode(qt, g.inverse(), twist_preantipode(q, g, s))
    assert back.matrix == s.matrix


def test_twisted_preantipode_verifies_on_twisted_object():
    q, _ = order_two_group()
    p = q.algebra.element([F(1, 2), F(-1, 2)])
    f = q.unit_element(2) + 3 * p.tensor(p)
    from qhopf.quasibialgebra import GaugeTransformation

    g = GaugeTransformation.from_element(f)
    qt = twist(q, g)
    s = require_preantipode(q)
    transported = twist_preantipode(q, g, s)
    assert verify_preantipode(qt, transported).passed
    assert transported.matrix == solved_matrix(qt)
