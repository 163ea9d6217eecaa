from fractions import Fraction
from itertools import permutations

import pytest

from qhopf import exactlin as ex
from qhopf.errors import NotAGroupError
from qhopf.examples import (
    cyclic_group_table,
    group_bialgebra,
    h2,
    h2_gauge,
    nonhopf_monoid,
    order_two_group,
    sweedler_h4,
    symmetric_group_3,
    symmetric_group_3_table,
    trivial_group,
)
from qhopf.preantipode import require_preantipode
from qhopf.quasiantipode import verify_quasi_antipode
from qhopf.quasibialgebra import verify_gauge, verify_quasi_bialgebra


def F(a, b=1):
    return Fraction(a, b)


# ------------------------------------------------------- table validation

# latin square without a two-sided identity (a Steiner quasigroup)
STEINER = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]

# loop with identity and two-sided inverses whose product is not associative
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


@pytest.mark.parametrize(
    "table,message",
    [
        (STEINER, "no two-sided identity"),
        (LOOP5, "associativity fails at (1, 1, 2)"),
        ([[0, 1], [1, 1]], "element 1 is not cancellable"),
        ([], "table must be square and nonempty"),
        ([[0, 1], [1]], "table must be square and nonempty"),
        ([[0, 2], [2, 0]], "entry 2 is not an element index"),
    ],
    ids=["no-identity", "non-associative", "not-cancellable", "empty", "ragged", "range"],
)
def test_invalid_tables_rejected(table, message):
    with pytest.raises(NotAGroupError) as exc:
        group_bialgebra(table)
    assert message in str(exc.value)


def test_identity_may_sit_at_any_index():
    # [[1,0],[0,1]] is the order-two group written with the identity at
    # index 1
    q, t = group_bialgebra([[1, 0], [0, 1]])
    assert q.algebra.unit.to_dense() == [0, 1]
    assert t.s_matrix == ex.Matrix.identity(2)
    assert verify_quasi_bialgebra(q).passed


def test_labels_must_be_distinct_and_sized():
    with pytest.raises(NotAGroupError):
        group_bialgebra(cyclic_group_table(2), labels=["a", "a"])
    with pytest.raises(NotAGroupError):
        group_bialgebra(cyclic_group_table(2), labels=["a"])


# ----------------------------------------------------------- group tables


def test_cyclic_table():
    assert cyclic_group_table(4) == [
        [0, 1, 2, 3],
        [1, 2, 3, 0],
        [2, 3, 0, 1],
        [3, 0, 1, 2],
    ]


def test_symmetric_group_table_matches_composition():
    table, labels = symmetric_group_3_table()
    perms = sorted(permutations(range(3)))
    assert labels == ["".join(map(str, p)) for p in perms]
    for i, p in enumerate(perms):
        for j, u in enumerate(perms):
            composed = tuple(p[u[k]] for k in range(3))
            assert table[i][j] == perms.index(composed)


def test_group_bialgebra_structure():
    q, t = group_bialgebra(cyclic_group_table(3))
    n = q.dim
    assert q.algebra.basis_labels == ("g0", "g1", "g2")
    # group-likes: diagonal coproduct, all-ones counit, trivial reassociator
    for g in range(n):
        assert q.coproduct.column(g) == ex.Vector.unit(n * n, g * n + g)
        assert q.counit_of(q.basis_element(g)) == 1
    assert q.reassociator == q.unit_element(3)
    # antipode inverts: column g holds the inverse of g
    for g in range(n):
        prod = q.basis_element(g) * q.algebra.element(t.s_matrix.column(g))
        assert prod == q.unit_element()


@pytest.mark.parametrize(
    "build",
    [trivial_group, order_two_group, symmetric_group_3],
    ids=["trivial", "c2", "s3"],
)
def test_bundled_groups_verify(build):
    q, t = build()
    assert verify_quasi_bialgebra(q).passed
    assert verify_quasi_antipode(q, t).passed


def test_trivial_group_is_one_dimensional():
    q, _ = trivial_group()
    assert q.dim == 1
    assert require_preantipode(q).matrix == ex.Matrix.identity(1)


def test_order_two_group_labels():
    q, _ = order_two_group()
    assert q.algebra.basis_labels == ("1", "g")


# ------------------------------------------------------- the twisted pair


def test_h2_components():
    q, t = h2()
    assert q.algebra.basis_labels == ("1", "g")
    assert q.reassociator.coords.to_dense() == [
        F(3, 4), F(1, 4), F(1, 4), F(-1, 4),
        F(1, 4), F(-1, 4), F(-1, 4), F(1, 4),
    ]
    assert t.s_matrix == ex.Matrix.identity(2)
    assert t.alpha.coords.to_dense() == [0, 1]
    assert t.beta.coords.to_dense() == [1, 0]
    assert verify_quasi_bialgebra(q).passed
    assert verify_quasi_antipode(q, t).passed


def test_h2_gauge_verifies_against_h2():
    q, _ = h2()
    assert verify_gauge(q, h2_gauge()).passed


def test_h2_reassociator_from_projector():
    q, _ = h2()
    p = q.algebra.element([F(1, 2), F(-1, 2)])
    assert p * p == p
    expected = q.unit_element(3) - 2 * p.tensor(p).tensor(p)
    assert q.reassociator == expected


# ------------------------------------------------------- four dimensions


def test_sweedler_relations():
    q, t = sweedler_h4()
    one, g, x, gx = (q.basis_element(i) for i in range(4))
    assert g * g == one
    assert x * x == 0 * one
    assert g * x == gx
    assert x * g == -1 * gx
    assert q.coproduct_of(x) == x.tensor(one) + g.tensor(x)
    assert q.counit_of(g) == 1 and q.counit_of(x) == 0
    assert verify_quasi_bialgebra(q).passed
    assert verify_quasi_antipode(q, t).passed


def test_sweedler_antipode_squares_to_conjugation():
    # s^2(x) = -x for the skew generator, identity on the group part
    q, t = sweedler_h4()
    s2 = t.s_matrix @ t.s_matrix
    assert s2.to_rows() == [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]


# ---------------------------------------------------------- monoid object


def test_monoid_verifies_but_is_not_a_group_algebra():
    q = nonhopf_monoid()
    assert verify_quasi_bialgebra(q).passed
    e = q.basis_element(1)
    assert e * e == e
    assert q.coproduct_of(e) == e.tensor(e)
