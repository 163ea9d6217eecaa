from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhopf import algebra as al
from qhopf import exactlin as ex
from qhopf.errors import (
    AlgebraAxiomError,
    DimensionError,
    NotInvertibleError,
)

import oracles


def F(a, b=1):
    return Fraction(a, b)


def c2_algebra():
    """Group algebra of the order-two group, basis (1, g)."""
    V = ex.Vector.from_dense
    mult = [
        [V([1, 0]), V([0, 1])],
        [V([0, 1]), V([1, 0])],
    ]
    return al.FinDimAlgebra(["1", "g"], mult)


def order_two_projector(a):
    """(1 - g)/2 as an element."""
    return a.element([F(1, 2), F(-1, 2)])


def reassociator_coords(n=2):
    """Dense coordinates of 1 - 2 p(x)p(x)p over the two-dim group algebra."""
    p = [F(1, 2), F(-1, 2)]
    out = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                v = -2 * p[i] * p[j] * p[k]
                if i == j == k == 0:
                    v += 1
                out.append(v)
    return out


# ------------------------------------------------------------ construction


def test_unit_is_derived_from_table():
    a = c2_algebra()
    assert a.unit.to_dense() == [1, 0]


def test_broken_unit_is_rejected():
    V = ex.Vector.from_dense
    mult = [
        [V([1, 0]), V([1, 0])],  # 1 * g deliberately wrong
        [V([0, 1]), V([1, 0])],
    ]
    with pytest.raises(AlgebraAxiomError):
        al.FinDimAlgebra(["1", "g"], mult)


def test_associativity_checked_at_construction():
    V = ex.Vector.from_dense
    # a*a = b, a*b = 1, b*a = 0: then (aa)a = 0 but a(aa) = 1
    mult = [
        [V([1, 0, 0]), V([0, 1, 0]), V([0, 0, 1])],
        [V([0, 1, 0]), V([0, 0, 1]), V([1, 0, 0])],
        [V([0, 0, 1]), V([0, 0, 0]), V([0, 0, 0])],
    ]
    with pytest.raises(AlgebraAxiomError) as exc:
        al.FinDimAlgebra(["1", "a", "b"], mult)
    assert "associativity" in str(exc.value)


# ------------------------------------------------------------ products


def test_projector_is_idempotent():
    a = c2_algebra()
    p = order_two_projector(a)
    assert p * p == p


def test_tensor_cube_product_matches_brute_force():
    a = c2_algebra()
    phi = a.tensor_element(3, reassociator_coords())
    ours = (phi * phi).coords.to_dense()
    mult_dense = [[a.mult_basis(i, j).to_dense() for j in range(2)] for i in range(2)]
    coords = reassociator_coords()
    theirs = oracles.tensor_cube_product(mult_dense, coords, coords, 2)
    assert ours == theirs
    assert phi * phi == a.unit_element(3)


def test_big_endian_flat_index():
    a = c2_algebra()
    e10 = a.basis_tensor((1, 0))
    assert e10.coords == ex.Vector.unit(4, 2)
    e011 = a.basis_tensor((0, 1, 1))
    assert e011.coords == ex.Vector.unit(8, 3)


def test_tensor_of_elements():
    a = c2_algebra()
    g = a.basis_element(1)
    one = a.basis_element(0)
    gg1 = g.tensor(g).tensor(one)
    assert gg1 == a.basis_tensor((1, 1, 0))


def test_mixed_arity_product_rejected():
    a = c2_algebra()
    with pytest.raises(DimensionError):
        a.basis_element(0) * a.unit_element(2)


# ------------------------------------------------------------ tensor powers


def test_tensor_power_table_is_associative_and_unital():
    a = c2_algebra()
    cube = a.tensor_power(3)
    assert cube.dim == 8
    cube.verify_associativity()
    cube.verify_unitality()
    assert cube.unit == a.unit_element(3).coords


def test_tensor_power_is_cached():
    a = c2_algebra()
    assert a.tensor_power(2) is a.tensor_power(2)


def test_tensor_power_labels():
    a = c2_algebra()
    sq = a.tensor_power(2)
    assert sq.basis_labels == ("1(x)1", "1(x)g", "g(x)1", "g(x)g")


# ------------------------------------------------------------ inversion


def test_invert_group_like():
    a = c2_algebra()
    g = a.basis_element(1)
    assert al.invert_element(g) == g


def test_invert_reassociator_is_itself():
    a = c2_algebra()
    phi = a.tensor_element(3, reassociator_coords())
    assert al.invert_element(phi) == phi


def test_idempotent_is_not_invertible():
    a = c2_algebra()
    with pytest.raises(NotInvertibleError):
        al.invert_element(order_two_projector(a))


def test_invert_unit_tensor():
    a = c2_algebra()
    one = a.unit_element(4)
    assert al.invert_element(one) == one


# ------------------------------------------------------------ linear maps


def test_apply_linear_map_infers_arity():
    a = c2_algebra()
    # coordinate flip on the algebra itself
    swap = ex.Matrix.from_rows([[0, 1], [1, 0]])
    g = a.basis_element(1)
    assert al.apply_linear_map(swap, g) == a.basis_element(0)


def test_apply_linear_map_changes_arity():
    a = c2_algebra()
    # contract the middle factor with the all-ones functional
    functional = ex.Matrix.from_rows([[1, 1]])
    contract = al.tensor_of_maps([ex.Matrix.identity(2), functional, ex.Matrix.identity(2)])
    x = a.basis_tensor((1, 0, 1)) + a.basis_tensor((1, 1, 1))
    out = al.apply_linear_map(contract, x, out_arity=2)
    assert out == 2 * a.basis_tensor((1, 1))


def test_tensor_of_identity_maps():
    assert al.tensor_of_maps([ex.Matrix.identity(2)] * 3) == ex.Matrix.identity(8)


small_entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(small_entries, min_size=2, max_size=2), min_size=2, max_size=2),
    st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=2, max_size=2),
    st.lists(small_entries, min_size=2, max_size=2),
    st.lists(small_entries, min_size=3, max_size=3),
)
def test_tensor_of_maps_respects_factorization(f_rows, g_rows, x, y):
    f = ex.Matrix.from_rows(f_rows)
    g = ex.Matrix.from_rows(g_rows)
    fx = f @ ex.Vector.from_dense(x)
    gy = g @ ex.Vector.from_dense(y)
    xy = ex.outer(ex.Vector.from_dense(x), ex.Vector.from_dense(y))
    assert al.tensor_of_maps([f, g]) @ xy == ex.outer(fx, gy)


def test_central_check():
    a = c2_algebra()
    assert a.is_central(a.tensor_element(3, reassociator_coords()))
    assert a.is_central(a.basis_element(1))


def test_element_format():
    a = c2_algebra()
    x = a.basis_element(0) - a.basis_element(1)
    assert x.format() == "1 - g"
    y = F(1, 2) * a.basis_tensor((0, 1))
    assert y.format() == "1/2*1(x)g"
