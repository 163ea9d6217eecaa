"""Builders for the bundled example objects.

Every builder is pure and deterministic: building twice gives bit-equal
structures.  Group algebras get the diagonal coproduct, all-ones counit,
trivial reassociator and inversion antipode; the two-dimensional twisted
example replaces the trivial reassociator with one built from the
rank-one idempotent (1 - g)/2 and carries the standard triple
(identity, g, 1).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra import FinDimAlgebra
from .errors import NotAGroupError
from .exactlin import Matrix, Vector
from .quasibialgebra import GaugeTransformation, QuasiBialgebra
from .quasiantipode import QuasiAntipode


def _check_group(table: Sequence[Sequence[int]]) -> int:
    """Validate a multiplication table; returns the identity's index."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroupError("table must be square and nonempty")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise NotAGroupError(f"entry {v!r} is not an element index")
    for i in range(n):
        if sorted(table[i]) != list(range(n)) or sorted(
            table[j][i] for j in range(n)
        ) != list(range(n)):
            raise NotAGroupError(f"element {i} is not cancellable")
    identity = next(
        (e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))),
        None,
    )
    if identity is None:
        raise NotAGroupError("no two-sided identity element")
    for i in range(n):
        if not any(table[i][j] == identity and table[j][i] == identity for j in range(n)):
            raise NotAGroupError(f"element {i} has no inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroupError(f"associativity fails at ({a}, {b}, {c})")
    return identity


def group_bialgebra(
    table: Sequence[Sequence[int]], labels: Sequence[str] | None = None
) -> tuple[QuasiBialgebra, QuasiAntipode]:
    """Group algebra of a finite group given by its multiplication table:
    diagonal coproduct, all-ones counit, trivial reassociator, inversion
    antipode with both distinguished elements equal to 1."""
    identity = _check_group(table)
    n = len(table)
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    if len(set(labels)) != n:
        raise NotAGroupError("labels must be distinct and match the table size")
    mult = [[Vector.unit(n, table[i][j]) for j in range(n)] for i in range(n)]
    algebra = FinDimAlgebra(labels, mult, Vector.unit(n, identity))
    coproduct = Matrix.from_columns(
        [Vector.unit(n * n, g * n + g) for g in range(n)]
    )
    counit = Matrix.from_rows([[1] * n])
    q = QuasiBialgebra(algebra, coproduct, counit, algebra.unit_element(3))
    inverse_of = [
        next(j for j in range(n) if table[i][j] == identity) for i in range(n)
    ]
    s_matrix = Matrix.from_columns([Vector.unit(n, inverse_of[i]) for i in range(n)])
    triple = QuasiAntipode(s_matrix, algebra.unit_element(), algebra.unit_element())
    return q, triple


def cyclic_group_table(order: int) -> list[list[int]]:
    return [[(i + j) % order for j in range(order)] for i in range(order)]


def symmetric_group_3_table() -> tuple[list[list[int]], list[str]]:
    """Composition table of the permutations of three points, ordered
    lexicographically by one-line notation; labels are one-line strings."""
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[u[k]] for k in range(3))] for u in perms]
        for p in perms
    ]
    labels = ["".join(str(v) for v in p) for p in perms]
    return table, labels


def trivial_group() -> tuple[QuasiBialgebra, QuasiAntipode]:
    return group_bialgebra([[0]], labels=["1"])


def order_two_group() -> tuple[QuasiBialgebra, QuasiAntipode]:
    return group_bialgebra(cyclic_group_table(2), labels=["1", "g"])


def symmetric_group_3() -> tuple[QuasiBialgebra, QuasiAntipode]:
    table, labels = symmetric_group_3_table()
    return group_bialgebra(table, labels)


def h2() -> tuple[QuasiBialgebra, QuasiAntipode]:
    """The two-dimensional quasi-Hopf algebra: order-two group algebra
    with reassociator 1 - 2 p(x)p(x)p for the idempotent p = (1 - g)/2 and
    quasi-antipode (identity, g, 1).  Its preantipode sends a to a*g."""
    base, _ = order_two_group()
    algebra = base.algebra
    p = algebra.element([Fraction(1, 2), Fraction(-1, 2)])
    reassociator = algebra.unit_element(3) - 2 * p.tensor(p).tensor(p)
    q = QuasiBialgebra(algebra, base.coproduct, base.counit, reassociator)
    triple = QuasiAntipode(
        s_matrix=Matrix.identity(2),
        alpha=algebra.basis_element(1),
        beta=algebra.unit_element(),
    )
    return q, triple


def h2_gauge() -> GaugeTransformation:
    """Self-inverse gauge 1(x)1 - 2 p(x)p on the algebra of :func:`h2`."""
    q, _ = h2()
    p = q.algebra.element([Fraction(1, 2), Fraction(-1, 2)])
    f = q.algebra.unit_element(2) - 2 * p.tensor(p)
    return GaugeTransformation.from_element(f)


def sweedler_h4() -> tuple[QuasiBialgebra, QuasiAntipode]:
    """The four-dimensional Hopf algebra with basis (1, g, x, gx),
    relations g*g = 1, x*x = 0, x*g = -g*x, viewed with a trivial
    reassociator; the antipode fixes 1 and g and sends x to -gx."""
    V = Vector.from_dense
    z = V([0, 0, 0, 0])
    e = [Vector.unit(4, i) for i in range(4)]
    mult = [
        [e[0], e[1], e[2], e[3]],
        [e[1], e[0], e[3], e[2]],
        [e[2], -1 * e[3], z, z],
        [e[3], -1 * e[2], z, z],
    ]
    algebra = FinDimAlgebra(["1", "g", "x", "gx"], mult, e[0])
    n = 4
    columns = [
        Vector.unit(16, 0),  # 1 -> 1(x)1
        Vector.unit(16, 5),  # g -> g(x)g
        Vector.unit(16, 8) + Vector.unit(16, 6),  # x -> x(x)1 + g(x)x
        Vector.unit(16, 13) + Vector.unit(16, 3),  # gx -> gx(x)g + 1(x)gx
    ]
    coproduct = Matrix.from_columns(columns)
    counit = Matrix.from_rows([[1, 1, 0, 0]])
    q = QuasiBialgebra(algebra, coproduct, counit, algebra.unit_element(3))
    s_matrix = Matrix.from_columns([e[0], e[1], -1 * e[3], e[2]])
    triple = QuasiAntipode(s_matrix, algebra.unit_element(), algebra.unit_element())
    return q, triple


def nonhopf_monoid() -> QuasiBialgebra:
    """Bialgebra of the two-element monoid {1, e} with e*e = e: it is a
    bialgebra but admits no preantipode, because the absorption laws force
    e * S(e) = S(1) while the contraction forces S(1) = 1, and e times
    anything stays in the span of e."""
    V = Vector.from_dense
    mult = [
        [V([1, 0]), V([0, 1])],
        [V([0, 1]), V([0, 1])],
    ]
    algebra = FinDimAlgebra(["1", "e"], mult, Vector.unit(2, 0))
    coproduct = Matrix.from_columns([Vector.unit(4, 0), Vector.unit(4, 3)])
    counit = Matrix.from_rows([[1, 1]])
    return QuasiBialgebra(algebra, coproduct, counit, algebra.unit_element(3))
