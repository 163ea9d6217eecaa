"""Reading and writing the JSON documents understood by the command line.

Every document is an object with a ``"format": "qhopf/1"`` stamp and a
``kind`` discriminator.  Scalars travel as exact rationals, either JSON
integers or ``"p/q"`` strings; floats are rejected outright.  Sparse
tensors list their nonzero entries in flat index order and dense blocks
are emitted fully, so files are stable under re-emission and diff
cleanly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .algebra import FinDimAlgebra
from .bimodule import LeftModule, QuasiHopfBimodule
from .errors import DimensionError, DocumentError, ScalarError
from .exactlin import Matrix, Vector, format_scalar, parse_scalar
from .preantipode import Preantipode
from .quasiantipode import QuasiAntipode
from .quasibialgebra import GaugeTransformation, QuasiBialgebra

FORMAT = "qhopf/1"

KINDS = (
    "quasi_bialgebra",
    "gauge",
    "left_module",
    "bimodule",
    "quasi_antipode",
    "preantipode",
)


# ------------------------------------------------------------ scalar layer


def _scalar(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ScalarError(f"{where}: not an exact rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_scalar(value)
        except ScalarError as exc:
            raise ScalarError(f"{where}: {exc}") from None
    raise ScalarError(f"{where}: not an exact rational literal: {value!r}")


def _scalar_list(values: Any, length: int, where: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise DocumentError(f"{where}: expected a list")
    if len(values) != length:
        raise DimensionError(f"{where}: expected {length} entries, got {len(values)}")
    return [_scalar(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _dense(values: Sequence[Fraction]) -> list[str]:
    return [format_scalar(v) for v in values]


def _field(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise DocumentError(f"{where}: missing field '{key}'")
    return obj[key]


def _int_field(obj: dict, key: str, where: str) -> int:
    value = _field(obj, key, where)
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: field '{key}' must be an integer")
    return value


def _check_header(obj: Any, kind: str) -> None:
    if not isinstance(obj, dict):
        raise DocumentError("document root must be a JSON object")
    if obj.get("format") != FORMAT:
        raise DocumentError(
            f"unsupported format {obj.get('format')!r}, expected {FORMAT!r}"
        )
    if obj.get("kind") != kind:
        raise DocumentError(f"expected a {kind} document, got kind {obj.get('kind')!r}")


def _sparse_tensor(entries: Any, n: int, width: int, key: str, where: str) -> Vector:
    """Entries [{<key>: [i...], value: scalar}] into a flat coordinate
    vector of dimension n**width."""
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected a list of entries")
    data: dict[int, Fraction] = {}
    for pos, entry in enumerate(entries):
        spot = f"{where}[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{spot}: expected an object")
        index = _field(entry, key, spot)
        if (
            not isinstance(index, list)
            or len(index) != width
            or any(isinstance(i, bool) or not isinstance(i, int) for i in index)
        ):
            raise DocumentError(f"{spot}: '{key}' must hold {width} integers")
        if any(i < 0 or i >= n for i in index):
            raise DimensionError(f"{spot}: index out of range for dimension {n}")
        flat = 0
        for i in index:
            flat = flat * n + i
        if flat in data:
            raise DocumentError(f"{spot}: duplicate index {index}")
        value = _scalar(_field(entry, "value", spot), f"{spot}.value")
        if value:
            data[flat] = value
    return Vector(n**width, data)


def _emit_sparse(coords: Vector, n: int, width: int, key: str) -> list[dict]:
    out = []
    for flat, value in coords.entries():
        index, rest = [], flat
        for _ in range(width):
            rest, digit = divmod(rest, n)
            index.append(digit)
        out.append({key: index[::-1], "value": format_scalar(value)})
    return out


def _matrix_rows(rows: Any, shape: tuple[int, int], where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise DimensionError(f"{where}: expected {shape[0]} rows")
    parsed = [_scalar_list(row, shape[1], f"{where}[{r}]") for r, row in enumerate(rows)]
    return Matrix.from_rows(parsed)


# --------------------------------------------------------- quasi-bialgebra


def emit_quasi_bialgebra(q: QuasiBialgebra) -> dict:
    n = q.dim
    return {
        "format": FORMAT,
        "kind": "quasi_bialgebra",
        "dim": n,
        "basis": list(q.algebra.basis_labels),
        "mult": [
            {"i": i, "j": j, "coeffs": _dense(q.algebra.mult_basis(i, j).to_dense())}
            for i in range(n)
            for j in range(n)
        ],
        "delta": [
            {"i": i, "coeffs": _dense(q.coproduct.column(i).to_dense())}
            for i in range(n)
        ],
        "counit": _dense(q.counit.row(0).to_dense()),
        "phi": _emit_sparse(q.reassociator.coords, n, 3, "index_triple"),
        "phi_inv": _emit_sparse(q.reassociator_inv.coords, n, 3, "index_triple"),
    }


def parse_quasi_bialgebra(obj: Any) -> QuasiBialgebra:
    _check_header(obj, "quasi_bialgebra")
    n = _int_field(obj, "dim", "quasi_bialgebra")
    if n < 1:
        raise DimensionError(f"dim must be >= 1, got {n}")

    basis = _field(obj, "basis", "quasi_bialgebra")
    if (
        not isinstance(basis, list)
        or len(basis) != n
        or any(not isinstance(b, str) for b in basis)
    ):
        raise DocumentError(f"'basis' must hold {n} labels")

    mult_entries = _field(obj, "mult", "quasi_bialgebra")
    if not isinstance(mult_entries, list):
        raise DocumentError("'mult' must be a list")
    table: dict[tuple[int, int], Vector] = {}
    for pos, entry in enumerate(mult_entries):
        where = f"mult[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        i = _int_field(entry, "i", where)
        j = _int_field(entry, "j", where)
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionError(f"{where}: pair ({i}, {j}) out of range")
        if (i, j) in table:
            raise DocumentError(f"{where}: duplicate pair ({i}, {j})")
        coeffs = _scalar_list(_field(entry, "coeffs", where), n, f"{where}.coeffs")
        table[(i, j)] = Vector.from_dense(coeffs)
    missing = [(i, j) for i in range(n) for j in range(n) if (i, j) not in table]
    if missing:
        raise DocumentError(f"'mult' is missing the pair {missing[0]}")
    algebra = FinDimAlgebra(basis, [[table[(i, j)] for j in range(n)] for i in range(n)])

    delta_entries = _field(obj, "delta", "quasi_bialgebra")
    if not isinstance(delta_entries, list):
        raise DocumentError("'delta' must be a list")
    columns: dict[int, Vector] = {}
    for pos, entry in enumerate(delta_entries):
        where = f"delta[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        i = _int_field(entry, "i", where)
        if not 0 <= i < n:
            raise DimensionError(f"{where}: index {i} out of range")
        if i in columns:
            raise DocumentError(f"{where}: duplicate index {i}")
        coeffs = _scalar_list(_field(entry, "coeffs", where), n * n, f"{where}.coeffs")
        columns[i] = Vector.from_dense(coeffs)
    for i in range(n):
        if i not in columns:
            raise DocumentError(f"'delta' is missing index {i}")
    coproduct = Matrix.from_columns([columns[i] for i in range(n)])

    counit_coeffs = _scalar_list(_field(obj, "counit", "quasi_bialgebra"), n, "counit")
    counit = Matrix.from_rows([counit_coeffs])

    phi = algebra.tensor_element(
        3, _sparse_tensor(_field(obj, "phi", "quasi_bialgebra"), n, 3, "index_triple", "phi")
    )
    phi_inv = None
    if "phi_inv" in obj:
        phi_inv = algebra.tensor_element(
            3, _sparse_tensor(obj["phi_inv"], n, 3, "index_triple", "phi_inv")
        )
    return QuasiBialgebra(algebra, coproduct, counit, phi, reassociator_inv=phi_inv)


# ------------------------------------------------------------------ gauge


def emit_gauge(q: QuasiBialgebra, gauge: GaugeTransformation) -> dict:
    n = q.dim
    return {
        "format": FORMAT,
        "kind": "gauge",
        "dim": n,
        "f": _emit_sparse(gauge.f.coords, n, 2, "index_pair"),
        "f_inv": _emit_sparse(gauge.f_inv.coords, n, 2, "index_pair"),
    }


def parse_gauge(obj: Any, q: QuasiBialgebra) -> GaugeTransformation:
    _check_header(obj, "gauge")
    n = _int_field(obj, "dim", "gauge")
    if n != q.dim:
        raise DimensionError(f"gauge dimension {n} does not match the algebra ({q.dim})")
    f = q.algebra.tensor_element(
        2, _sparse_tensor(_field(obj, "f", "gauge"), n, 2, "index_pair", "f")
    )
    gauge = GaugeTransformation.from_element(f)
    if "f_inv" in obj:
        supplied = q.algebra.tensor_element(
            2, _sparse_tensor(obj["f_inv"], n, 2, "index_pair", "f_inv")
        )
        if supplied != gauge.f_inv:
            raise DocumentError("supplied 'f_inv' disagrees with the computed inverse")
    return gauge


# -------------------------------------------------------- antipode carriers


def emit_quasi_antipode(q: QuasiBialgebra, t: QuasiAntipode) -> dict:
    n = q.dim
    return {
        "format": FORMAT,
        "kind": "quasi_antipode",
        "dim": n,
        "s": [_dense(t.s_matrix.row(r).to_dense()) for r in range(n)],
        "alpha": _dense(t.alpha.coords.to_dense()),
        "beta": _dense(t.beta.coords.to_dense()),
    }


def parse_quasi_antipode(obj: Any, q: QuasiBialgebra) -> QuasiAntipode:
    _check_header(obj, "quasi_antipode")
    n = _int_field(obj, "dim", "quasi_antipode")
    if n != q.dim:
        raise DimensionError(
            f"quasi_antipode dimension {n} does not match the algebra ({q.dim})"
        )
    s = _matrix_rows(_field(obj, "s", "quasi_antipode"), (n, n), "s")
    alpha = q.algebra.element(
        Vector.from_dense(_scalar_list(_field(obj, "alpha", "quasi_antipode"), n, "alpha"))
    )
    beta = q.algebra.element(
        Vector.from_dense(_scalar_list(_field(obj, "beta", "quasi_antipode"), n, "beta"))
    )
    return QuasiAntipode(s, alpha, beta)


def emit_preantipode(n: int, s: Preantipode) -> dict:
    return {
        "format": FORMAT,
        "kind": "preantipode",
        "dim": n,
        "s": [_dense(s.matrix.row(r).to_dense()) for r in range(n)],
    }


def parse_preantipode(obj: Any, q: QuasiBialgebra) -> Preantipode:
    _check_header(obj, "preantipode")
    n = _int_field(obj, "dim", "preantipode")
    if n != q.dim:
        raise DimensionError(
            f"preantipode dimension {n} does not match the algebra ({q.dim})"
        )
    return Preantipode(_matrix_rows(_field(obj, "s", "preantipode"), (n, n), "s"))


# ---------------------------------------------------------------- modules


def emit_left_module(q: QuasiBialgebra, N: LeftModule) -> dict:
    n = q.dim
    return {
        "format": FORMAT,
        "kind": "left_module",
        "dim": N.dim,
        "algebra_dim": n,
        "action": [
            {"a": a, "x": x, "coeffs": _dense(N.action.column(a * N.dim + x).to_dense())}
            for a in range(n)
            for x in range(N.dim)
        ],
    }


def _action_block(
    entries: Any, keys: tuple[str, str], ranges: tuple[int, int], out_dim: int, where: str
) -> list[Vector]:
    """Columns of an action matrix keyed by two indices, first key major."""
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected a list")
    table: dict[tuple[int, int], Vector] = {}
    for pos, entry in enumerate(entries):
        spot = f"{where}[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{spot}: expected an object")
        first = _int_field(entry, keys[0], spot)
        second = _int_field(entry, keys[1], spot)
        if not (0 <= first < ranges[0] and 0 <= second < ranges[1]):
            raise DimensionError(f"{spot}: pair ({first}, {second}) out of range")
        if (first, second) in table:
            raise DocumentError(f"{spot}: duplicate pair ({first}, {second})")
        coeffs = _scalar_list(_field(entry, "coeffs", spot), out_dim, f"{spot}.coeffs")
        table[(first, second)] = Vector.from_dense(coeffs)
    columns = []
    for first in range(ranges[0]):
        for second in range(ranges[1]):
            if (first, second) not in table:
                raise DocumentError(f"{where} is missing the pair ({first}, {second})")
            columns.append(table[(first, second)])
    return columns


def parse_left_module(obj: Any, q: QuasiBialgebra) -> LeftModule:
    _check_header(obj, "left_module")
    n = _int_field(obj, "algebra_dim", "left_module")
    if n != q.dim:
        raise DimensionError(
            f"left_module algebra dimension {n} does not match the algebra ({q.dim})"
        )
    dim = _int_field(obj, "dim", "left_module")
    if dim < 1:
        raise DimensionError(f"module dimension must be >= 1, got {dim}")
    columns = _action_block(
        _field(obj, "action", "left_module"), ("a", "x"), (n, dim), dim, "action"
    )
    return LeftModule(dim, Matrix.from_columns(columns))


def emit_bimodule(q: QuasiBialgebra, M: QuasiHopfBimodule) -> dict:
    n = q.dim
    m = M.dim
    return {
        "format": FORMAT,
        "kind": "bimodule",
        "dim": m,
        "algebra_dim": n,
        "left_action": [
            {"a": a, "x": x, "coeffs": _dense(M.left_action.column(a * m + x).to_dense())}
            for a in range(n)
            for x in range(m)
        ],
        "right_action": [
            {"x": x, "a": a, "coeffs": _dense(M.right_action.column(x * n + a).to_dense())}
            for x in range(m)
            for a in range(n)
        ],
        "coaction": [
            {"x": x, "coeffs": _dense(M.coaction.column(x).to_dense())} for x in range(m)
        ],
    }


def parse_bimodule(obj: Any, q: QuasiBialgebra) -> QuasiHopfBimodule:
    _check_header(obj, "bimodule")
    n = _int_field(obj, "algebra_dim", "bimodule")
    if n != q.dim:
        raise DimensionError(
            f"bimodule algebra dimension {n} does not match the algebra ({q.dim})"
        )
    m = _int_field(obj, "dim", "bimodule")
    if m < 1:
        raise DimensionError(f"bimodule dimension must be >= 1, got {m}")
    left = Matrix.from_columns(
        _action_block(_field(obj, "left_action", "bimodule"), ("a", "x"), (n, m), m, "left_action")
    )
    right = Matrix.from_columns(
        _action_block(_field(obj, "right_action", "bimodule"), ("x", "a"), (m, n), m, "right_action")
    )
    co_entries = _field(obj, "coaction", "bimodule")
    if not isinstance(co_entries, list):
        raise DocumentError("'coaction' must be a list")
    columns: dict[int, Vector] = {}
    for pos, entry in enumerate(co_entries):
        where = f"coaction[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        x = _int_field(entry, "x", where)
        if not 0 <= x < m:
            raise DimensionError(f"{where}: index {x} out of range")
        if x in columns:
            raise DocumentError(f"{where}: duplicate index {x}")
        coeffs = _scalar_list(_field(entry, "coeffs", where), m * n, f"{where}.coeffs")
        columns[x] = Vector.from_dense(coeffs)
    for x in range(m):
        if x not in columns:
            raise DocumentError(f"'coaction' is missing index {x}")
    coaction = Matrix.from_columns([columns[x] for x in range(m)])
    return QuasiHopfBimodule(q, m, left, right, coaction)


# --------------------------------------------------------------- file I/O


def load_document(path: str) -> dict:
    """Read and decode one JSON document; all failures become DocumentError."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(obj, dict):
        raise DocumentError(f"{path}: document root must be a JSON object")
    return obj


def save_document(path: str, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_document(obj))


def render_document(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"
