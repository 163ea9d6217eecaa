"""Command line surface.

Subcommands parse JSON structure-constant documents, dispatch to the
library, and print one deterministic report: fixed check order, fixed
scalar formatting, no timestamps or paths, so identical inputs produce
byte-identical output.  Exit status is 0 when every check passed, 1 on a
mathematical failure (the report still prints), and 2 for unusable
input or arguments.

QHOPF_THREADS caps the worker pool used to evaluate independent report
sections (unset = 1, 0 = one per CPU); results are collected in a fixed
order either way.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from . import _pool
from . import examples as ex_mod
from . import fileformat as ff
from .bimodule import (
    G_of,
    LeftModule,
    a_hat_tensor_a,
    adjunction_data,
    bc_coinvariants,
    coinvariant_report,
    structure_theorem_data,
    tau_matrix_of,
    tau_properties_report,
    verify_quasi_hopf_bimodule,
)
from .errors import (
    CNotInvertibleError,
    DocumentError,
    InternalInconsistencyError,
    InvalidGaugeError,
    NotRelatedError,
    PhiNotCentralError,
    QhopfError,
    XiNotInvertibleError,
    XiNotWellDefinedError,
)
from .exactlin import Matrix, format_scalar
from .preantipode import (
    Found,
    NonUnique,
    NotFound,
    check_derived_identities,
    solve_preantipode,
    verify_preantipode,
)
from .quasiantipode import (
    compare_quasi_antipodes,
    hopf_from_central_phi,
    majid_construction,
    recover_quasi_antipode_via_xi,
    verify_quasi_antipode,
)
from .quasibialgebra import (
    QuasiBialgebra,
    VerificationReport,
    twist,
    verify_gauge,
    verify_quasi_bialgebra,
)

EXAMPLES = {
    "trivial-group": lambda: ff.emit_quasi_bialgebra(ex_mod.trivial_group()[0]),
    "c2": lambda: ff.emit_quasi_bialgebra(ex_mod.order_two_group()[0]),
    "s3": lambda: ff.emit_quasi_bialgebra(ex_mod.symmetric_group_3()[0]),
    "h2": lambda: ff.emit_quasi_bialgebra(ex_mod.h2()[0]),
    "h2-antipode": lambda: ff.emit_quasi_antipode(ex_mod.h2()[0], ex_mod.h2()[1]),
    "h2-gauge": lambda: ff.emit_gauge(ex_mod.h2()[0], ex_mod.h2_gauge()),
    "h4": lambda: ff.emit_quasi_bialgebra(ex_mod.sweedler_h4()[0]),
    "h4-antipode": lambda: ff.emit_quasi_antipode(
        ex_mod.sweedler_h4()[0], ex_mod.sweedler_h4()[1]
    ),
    "nonhopf": lambda: ff.emit_quasi_bialgebra(ex_mod.nonhopf_monoid()),
}

MODULE_BUILDERS = {
    "regular": lambda q: G_of(q, LeftModule.regular(q)),
    "trivial": lambda q: G_of(q, LeftModule.trivial(q)),
    "square": a_hat_tensor_a,
}


class UsageError(Exception):
    """Bad arguments or unusable input files; maps to exit status 2."""


# ------------------------------------------------------------ worker pool


def worker_count() -> int:
    raw = os.environ.get("QHOPF_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"QHOPF_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"QHOPF_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def run_sections(thunks: Sequence[Callable[[], VerificationReport]]) -> list[VerificationReport]:
    """Evaluate independent report sections, keeping their given order."""
    return _pool.run_thunks(thunks, worker_count())


# --------------------------------------------------------------- rendering


def _scalars(values) -> list[str]:
    return [format_scalar(v) for v in values]


def _matrix_rows(matrix: Matrix) -> list[list[str]]:
    return [_scalars(matrix.row(r).to_dense()) for r in range(matrix.rows)]


def _report_payload(report: VerificationReport) -> dict:
    checks = []
    for check in report.checks:
        witness = None
        if check.witness is not None:
            witness = {
                "basis": list(check.witness.basis),
                "lhs": _scalars(check.witness.lhs.to_dense()),
                "rhs": _scalars(check.witness.rhs.to_dense()),
            }
        checks.append(
            {
                "name": check.name,
                "passed": check.passed,
                "informative": check.informative,
                "witness": witness,
            }
        )
    return {"subject": report.subject, "passed": report.passed, "checks": checks}


def _data_lines(data: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in data.items():
        label = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_data_lines(value, prefix=f"{label} "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            for i, row in enumerate(value):
                lines.append(f"{label}[{i}]: {', '.join(row)}")
        elif isinstance(value, list):
            lines.append(f"{label}: {', '.join(str(v) for v in value)}")
        elif value is None:
            lines.append(f"{label}: -")
        else:
            lines.append(f"{label}: {value}")
    return lines


def render_text(command: str, reports: Sequence[VerificationReport], data: dict, passed: bool) -> str:
    lines = [f"command: {command}"]
    for report in reports:
        lines.append(f"[{report.subject}]")
        for check in report.checks:
            verdict = "PASS" if check.passed else "FAIL"
            note = " (informative)" if check.informative else ""
            lines.append(f"{check.name}: {verdict}{note}")
            if check.witness is not None:
                w = check.witness
                lines.append(f"  witness basis: {w.basis}")
                lines.append(f"  witness lhs: {', '.join(_scalars(w.lhs.to_dense()))}")
                lines.append(f"  witness rhs: {', '.join(_scalars(w.rhs.to_dense()))}")
    if data:
        lines.append("[data]")
        lines.extend(_data_lines(data))
    lines.append(f"result: {'PASS' if passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_json(command: str, reports: Sequence[VerificationReport], data: dict, passed: bool) -> str:
    payload = {
        "format": ff.FORMAT,
        "command": command,
        "passed": passed,
        "reports": [_report_payload(r) for r in reports],
        "data": data,
    }
    return json.dumps(payload, indent=2) + "\n"


def emit(args, command: str, reports: Sequence[VerificationReport], data: dict, passed: bool) -> int:
    renderer = render_json if args.format == "json" else render_text
    sys.stdout.write(renderer(command, reports, data, passed))
    return 0 if passed else 1


# ----------------------------------------------------------------- loading


def load_qba(path: str) -> QuasiBialgebra:
    return ff.parse_quasi_bialgebra(ff.load_document(path))


def load_module(args, q: QuasiBialgebra):
    if args.module_file is not None:
        return ff.parse_bimodule(ff.load_document(args.module_file), q)
    return MODULE_BUILDERS[args.module](q)


def require_solved(q: QuasiBialgebra):
    """Preantipode or a (data, passed) failure payload for the report."""
    result = solve_preantipode(q)
    if isinstance(result, NotFound):
        w = result.witness
        data = {
            "outcome": "not-found",
            "witness": {
                "axiom": w.axiom,
                "a": w.a,
                "b": w.b,
                "coordinate": w.coordinate,
                "row": w.row,
                "detail": w.describe(q),
            },
        }
        return None, data
    if isinstance(result, NonUnique):
        return None, {"outcome": "non-unique", "kernel_dim": result.kernel_dim}
    return result.preantipode, None


# -------------------------------------------------------------- subcommands


def cmd_verify(args) -> int:
    q = load_qba(args.input)
    report = verify_quasi_bialgebra(q)
    return emit(args, "verify", [report], {"dim": q.dim}, report.passed)


def cmd_preantipode(args) -> int:
    q = load_qba(args.input)
    s, failure = require_solved(q)
    if s is None:
        return emit(args, "preantipode", [], failure, False)
    sections = run_sections(
        [lambda: verify_preantipode(q, s), lambda: check_derived_identities(q, s)]
    )
    data = {"outcome": "found", "s": _matrix_rows(s.matrix)}
    passed = all(r.passed for r in sections)
    if args.emit:
        ff.save_document(args.emit, ff.emit_preantipode(q.dim, s))
    return emit(args, "preantipode", sections, data, passed)


def cmd_twist(args) -> int:
    q = load_qba(args.input)
    try:
        gauge = ff.parse_gauge(ff.load_document(args.gauge), q)
    except InvalidGaugeError as exc:
        return emit(args, "twist", [], {"outcome": "failed", "error": str(exc)}, False)
    gauge_report = verify_gauge(q, gauge)
    if not gauge_report.passed:
        return emit(args, "twist", [gauge_report], {}, False)
    twisted = twist(q, gauge)
    twisted_report = verify_quasi_bialgebra(twisted)
    if args.out:
        ff.save_document(args.out, ff.emit_quasi_bialgebra(twisted))
    return emit(
        args,
        "twist",
        [gauge_report, twisted_report],
        {"dim": q.dim},
        twisted_report.passed,
    )


def cmd_recover_antipode(args) -> int:
    q = load_qba(args.input)
    s, failure = require_solved(q)
    if s is None:
        return emit(args, "recover-antipode", [], failure, False)
    try:
        if args.central_phi:
            recovery = hopf_from_central_phi(q, s)
            reports = [recovery.hopf_report]
            route = "central-phi"
        else:
            recovery = recover_quasi_antipode_via_xi(q, s)
            reports = [recovery.antipode_report, recovery.preantipode_report]
            route = "xi"
    except (XiNotWellDefinedError, XiNotInvertibleError, PhiNotCentralError) as exc:
        return emit(
            args,
            "recover-antipode",
            [],
            {"outcome": "failed", "error": str(exc)},
            False,
        )
    t = recovery.antipode
    data = {
        "outcome": "recovered",
        "route": route,
        "s": _matrix_rows(t.s_matrix),
        "alpha": _scalars(t.alpha.coords.to_dense()),
        "beta": _scalars(t.beta.coords.to_dense()),
    }
    if args.emit:
        ff.save_document(args.emit, ff.emit_quasi_antipode(q, t))
    return emit(args, "recover-antipode", reports, data, all(r.passed for r in reports))


def cmd_majid(args) -> int:
    q = load_qba(args.input)
    if args.s is not None:
        s_matrix = ff.parse_preantipode(ff.load_document(args.s), q).matrix
    else:
        s_matrix = Matrix.identity(q.dim)
    try:
        result = majid_construction(q, s_matrix)
    except CNotInvertibleError as exc:
        return emit(args, "majid", [], {"outcome": "failed", "error": str(exc)}, False)
    reports = [result.antipode_report, result.preantipode_report]
    data = {
        "outcome": "constructed",
        "c": _scalars(result.canonical_element.coords.to_dense()),
        "alpha": _scalars(result.antipode.alpha.coords.to_dense()),
        "beta": _scalars(result.antipode.beta.coords.to_dense()),
    }
    if args.emit:
        ff.save_document(args.emit, ff.emit_quasi_antipode(q, result.antipode))
    return emit(args, "majid", reports, data, all(r.passed for r in reports))


def cmd_bimodule_check(args) -> int:
    q = load_qba(args.input)
    M = load_module(args, q)
    report = verify_quasi_hopf_bimodule(q, M)
    return emit(args, "bimodule-check", [report], {"dim": M.dim}, report.passed)


def cmd_structure_theorem(args) -> int:
    q = load_qba(args.input)
    M = load_module(args, q)
    s, failure = require_solved(q)
    if s is None:
        return emit(args, "structure-theorem", [], failure, False)

    module_report = verify_quasi_hopf_bimodule(q, M)
    tau = tau_matrix_of(q, s, M)
    sections = run_sections(
        [
            lambda: tau_properties_report(q, M, tau),
            lambda: coinvariant_report(q, M, tau),
        ]
    )
    reports = [module_report, *sections]
    data: dict = {"module_dim": M.dim}
    passed = all(r.passed for r in reports)
    if passed:
        try:
            structure = structure_theorem_data(q, s, M)
            _, _, _, adj_report = adjunction_data(q, s, M, LeftModule.regular(q))
        except (QhopfError, InternalInconsistencyError) as exc:
            return emit(
                args,
                "structure-theorem",
                reports,
                {**data, "outcome": "failed", "error": str(exc)},
                False,
            )
        reports.extend([structure.report, adj_report])
        data["coinvariant_dim"] = len(structure.tau.coinv_basis)
        passed = all(r.passed for r in reports)
    return emit(args, "structure-theorem", reports, data, passed)


def cmd_bc_check(args) -> int:
    q = load_qba(args.input)
    M = load_module(args, q)
    if args.antipode is not None:
        t = ff.parse_quasi_antipode(ff.load_document(args.antipode), q)
        source = "file"
    else:
        s, failure = require_solved(q)
        if s is None:
            return emit(args, "bc-check", [], failure, False)
        try:
            t = recover_quasi_antipode_via_xi(q, s).antipode
        except (XiNotWellDefinedError, XiNotInvertibleError) as exc:
            return emit(
                args, "bc-check", [], {"outcome": "failed", "error": str(exc)}, False
            )
        source = "xi-recovery"
    triple_report = verify_quasi_antipode(q, t)
    if not triple_report.passed:
        return emit(args, "bc-check", [triple_report], {"antipode": source}, False)
    report = bc_coinvariants(q, t, M)
    return emit(
        args,
        "bc-check",
        [triple_report, report],
        {"antipode": source, "module_dim": M.dim},
        report.passed,
    )


def cmd_compare_antipodes(args) -> int:
    q = load_qba(args.input)
    t1 = ff.parse_quasi_antipode(ff.load_document(args.first), q)
    t2 = ff.parse_quasi_antipode(ff.load_document(args.second), q)
    try:
        u = compare_quasi_antipodes(q, t1, t2)
    except NotRelatedError as exc:
        return emit(
            args,
            "compare-antipodes",
            [],
            {"outcome": "not-related", "error": str(exc)},
            False,
        )
    data = {
        "outcome": "related",
        "u": _scalars(u.coords.to_dense()),
        "u_formatted": u.format(),
    }
    return emit(args, "compare-antipodes", [], data, True)


def cmd_example(args) -> int:
    document = EXAMPLES[args.name]()
    ff.save_document(args.out, document)
    sys.stdout.write(f"wrote {args.name} document\n")
    return 0


# -------------------------------------------------------------- arg parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhopf",
        description="Exact verification and solving for finite-dimensional "
        "quasi-bialgebras and their quasi-Hopf bimodules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=handler)
        return p

    p = add("verify", cmd_verify, "check the quasi-bialgebra axioms")
    p.add_argument("input")

    p = add("preantipode", cmd_preantipode, "solve the preantipode linear system")
    p.add_argument("input")
    p.add_argument("--emit", metavar="PATH", help="write the solution as a document")

    p = add("twist", cmd_twist, "apply a gauge transformation")
    p.add_argument("input")
    p.add_argument("gauge")
    p.add_argument("--out", metavar="PATH", help="write the twisted object")

    p = add("recover-antipode", cmd_recover_antipode, "build a quasi-antipode from the preantipode")
    p.add_argument("input")
    p.add_argument(
        "--central-phi",
        action="store_true",
        help="use the central-reassociator shortcut instead of the canonical map",
    )
    p.add_argument("--emit", metavar="PATH")

    p = add("majid", cmd_majid, "construct a triple from an antimultiplicative map")
    p.add_argument("input")
    p.add_argument("--s", metavar="PATH", help="preantipode document holding the map (default: identity)")
    p.add_argument("--emit", metavar="PATH")

    def add_module_flags(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--module", choices=sorted(MODULE_BUILDERS))
        group.add_argument("--module-file", metavar="PATH")

    p = add("bimodule-check", cmd_bimodule_check, "check the quasi-Hopf bimodule axioms")
    p.add_argument("input")
    add_module_flags(p)

    p = add("structure-theorem", cmd_structure_theorem, "run the full coinvariants decomposition")
    p.add_argument("input")
    add_module_flags(p)

    p = add("bc-check", cmd_bc_check, "compare the two coinvariant projections")
    p.add_argument("input")
    add_module_flags(p)
    p.add_argument("--antipode", metavar="PATH", help="quasi-antipode document (default: recover one)")

    p = add("compare-antipodes", cmd_compare_antipodes, "find the unit relating two triples")
    p.add_argument("input")
    p.add_argument("first")
    p.add_argument("second")

    p = add("example", cmd_example, "write a bundled example document")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.add_argument("--out", required=True, metavar="PATH")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        worker_count()
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidGaugeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QhopfError as exc:
        # anything raised while reading or constructing inputs
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
