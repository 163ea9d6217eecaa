"""End-to-end coverage for the command line: golden reports, report schema
conformance, exit codes, document emission, and byte determinism."""

import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

import qhopf.fileformat as ff
from qhopf.cli import EXAMPLES, main, worker_count
from qhopf.bimodule import G_of, LeftModule

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

SCHEMA = json.loads(
    resources.files("qhopf").joinpath("schemas/report.schema.json").read_text()
)


@pytest.fixture(autouse=True)
def _default_threads(monkeypatch):
    monkeypatch.delenv("QHOPF_THREADS", raising=False)


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ----------------------------------------------------------------- goldens


GOLDEN_CASES = [
    ("verify_h2.txt", ["verify", str(DATA / "h2.qba")], 0),
    ("verify_h2.json", ["verify", str(DATA / "h2.qba"), "--format", "json"], 0),
    ("preantipode_h2.txt", ["preantipode", str(DATA / "h2.qba")], 0),
    ("preantipode_h2.json", ["preantipode", str(DATA / "h2.qba"), "--format", "json"], 0),
    ("preantipode_nonhopf.txt", ["preantipode", str(DATA / "nonhopf.qba")], 1),
    (
        "preantipode_nonhopf.json",
        ["preantipode", str(DATA / "nonhopf.qba"), "--format", "json"],
        1,
    ),
    ("recover_h2.txt", ["recover-antipode", str(DATA / "h2.qba")], 0),
    ("majid_h2.txt", ["majid", str(DATA / "h2.qba")], 0),
    (
        "structure_h2_square.txt",
        ["structure-theorem", str(DATA / "h2.qba"), "--module", "square"],
        0,
    ),
]


@pytest.mark.parametrize("fname,argv,want", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_output_matches_golden(capsys, fname, argv, want):
    rc, out, _ = run(capsys, argv)
    assert rc == want
    assert out == (GOLDEN / fname).read_text()


def test_runs_are_byte_identical(capsys):
    argv = ["structure-theorem", str(DATA / "h2.qba"), "--module", "square"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second


def test_thread_count_does_not_change_output(capsys, monkeypatch):
    argv = ["structure-theorem", str(DATA / "h2.qba"), "--module", "square"]
    monkeypatch.setenv("QHOPF_THREADS", "4")
    rc, out, _ = run(capsys, argv)
    assert rc == 0
    assert out == (GOLDEN / "structure_h2_square.txt").read_text()


def test_subprocess_matches_golden(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "qhopf", "verify", str(DATA / "h2.qba")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout == (GOLDEN / "verify_h2.txt").read_text()


# ------------------------------------------------------------ json reports


JSON_COMMANDS = [
    ["verify", str(DATA / "h2.qba")],
    ["verify", str(DATA / "h4.qba")],
    ["preantipode", str(DATA / "h2.qba")],
    ["preantipode", str(DATA / "nonhopf.qba")],
    ["twist", str(DATA / "h2.qba"), str(DATA / "h2_gauge.json")],
    ["recover-antipode", str(DATA / "h2.qba")],
    ["recover-antipode", str(DATA / "h4.qba"), "--central-phi"],
    ["majid", str(DATA / "h2.qba")],
    ["bimodule-check", str(DATA / "h2.qba"), "--module", "regular"],
    ["structure-theorem", str(DATA / "h2.qba"), "--module", "square"],
    ["bc-check", str(DATA / "h4.qba"), "--module", "square"],
    [
        "compare-antipodes",
        str(DATA / "h2.qba"),
        str(DATA / "h2_antipode.json"),
        str(DATA / "h2_antipode.json"),
    ],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=[" ".join(c[:1] + c[2:3]) for c in JSON_COMMANDS])
def test_json_reports_validate_against_schema(capsys, argv):
    rc, out, _ = run(capsys, argv + ["--format", "json"])
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["format"] == "qhopf/1"
    assert payload["command"] == argv[0]
    assert payload["passed"] == (rc == 0)


def test_structure_theorem_json_data(capsys):
    _, out, _ = run(
        capsys,
        ["structure-theorem", str(DATA / "h2.qba"), "--module", "square", "--format", "json"],
    )
    data = json.loads(out)["data"]
    assert data["module_dim"] == 4
    assert data["coinvariant_dim"] == 2


def test_compare_antipodes_reports_the_unit(capsys, tmp_path):
    recovered = tmp_path / "recovered.json"
    rc, _, _ = run(
        capsys, ["recover-antipode", str(DATA / "h2.qba"), "--emit", str(recovered)]
    )
    assert rc == 0
    rc, out, _ = run(
        capsys,
        [
            "compare-antipodes",
            str(DATA / "h2.qba"),
            str(DATA / "h2_antipode.json"),
            str(recovered),
            "--format",
            "json",
        ],
    )
    assert rc == 0
    data = json.loads(out)["data"]
    assert data["outcome"] == "related"
    assert data["u"] == ["0", "1"]
    assert data["u_formatted"] == "g"


# ------------------------------------------------------------- exit codes


def test_missing_input_file_is_a_usage_failure(capsys):
    rc, _, err = run(capsys, ["verify", "no-such-file.qba"])
    assert rc == 2
    assert "cannot read" in err


def test_invalid_json_is_a_usage_failure(capsys, tmp_path):
    path = tmp_path / "broken.qba"
    path.write_text("{этот не json")
    rc, _, err = run(capsys, ["verify", str(path)])
    assert rc == 2
    assert "invalid JSON" in err


def test_unknown_subcommand(capsys):
    assert run(capsys, ["frobnicate"])[0] == 2


def test_no_arguments(capsys):
    assert run(capsys, [])[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, ["--help"])[0] == 0


def test_module_flags_are_mutually_exclusive(capsys, tmp_path):
    rc, _, _ = run(
        capsys,
        [
            "bimodule-check",
            str(DATA / "h2.qba"),
            "--module",
            "regular",
            "--module-file",
            str(tmp_path / "m.json"),
        ],
    )
    assert rc == 2


def test_failed_verification_exits_one(capsys, tmp_path):
    doc = ff.load_document(str(DATA / "h2.qba"))
    doc["counit"] = ["1", "0"]
    path = tmp_path / "bad.qba"
    ff.save_document(str(path), doc)
    rc, out, _ = run(capsys, ["verify", str(path)])
    assert rc == 1
    assert "result: FAIL" in out


def test_noninvertible_gauge_exits_one(capsys, tmp_path):
    gauge = {
        "format": "qhopf/1",
        "kind": "gauge",
        "dim": 2,
        "f": [
            {"index_pair": [i, j], "value": "1/2"} for i in range(2) for j in range(2)
        ],
    }
    path = tmp_path / "gauge.json"
    ff.save_document(str(path), gauge)
    rc, out, _ = run(capsys, ["twist", str(DATA / "h2.qba"), str(path)])
    assert rc == 1
    assert "result: FAIL" in out


def test_nonhopf_recovery_exits_one(capsys):
    rc, out, _ = run(capsys, ["recover-antipode", str(DATA / "nonhopf.qba")])
    assert rc == 1
    assert "outcome: not-found" in out


def test_bad_thread_count_is_a_usage_failure(capsys, monkeypatch):
    monkeypatch.setenv("QHOPF_THREADS", "bogus")
    rc, _, err = run(capsys, ["verify", str(DATA / "h2.qba")])
    assert rc == 2
    assert "QHOPF_THREADS must be an integer" in err
    monkeypatch.setenv("QHOPF_THREADS", "-1")
    rc, _, err = run(capsys, ["verify", str(DATA / "h2.qba")])
    assert rc == 2
    assert "QHOPF_THREADS must be >= 0" in err


def test_worker_count_resolution(monkeypatch):
    monkeypatch.delenv("QHOPF_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("QHOPF_THREADS", "")
    assert worker_count() == 1
    monkeypatch.setenv("QHOPF_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("QHOPF_THREADS", "0")
    assert worker_count() >= 1


# ------------------------------------------------------- document plumbing


def test_example_documents_parse(capsys, tmp_path):
    h2 = ff.parse_quasi_bialgebra(ff.load_document(str(DATA / "h2.qba")))
    h4 = ff.parse_quasi_bialgebra(ff.load_document(str(DATA / "h4.qba")))
    for name in sorted(EXAMPLES):
        out = tmp_path / f"{name}.json"
        rc, text, _ = run(capsys, ["example", name, "--out", str(out)])
        assert rc == 0
        assert text == f"wrote {name} document\n"
        doc = ff.load_document(str(out))
        if doc["kind"] == "quasi_bialgebra":
            ff.parse_quasi_bialgebra(doc)
        elif doc["kind"] == "gauge":
            ff.parse_gauge(doc, h2)
        else:
            ff.parse_quasi_antipode(doc, h2 if doc["dim"] == 2 else h4)


def test_preantipode_emit_round_trip(capsys, tmp_path):
    out = tmp_path / "s.json"
    rc, _, _ = run(capsys, ["preantipode", str(DATA / "h2.qba"), "--emit", str(out)])
    assert rc == 0
    q = ff.parse_quasi_bialgebra(ff.load_document(str(DATA / "h2.qba")))
    s = ff.parse_preantipode(ff.load_document(str(out)), q)
    rows = [[str(v) for v in s.matrix.row(r).to_dense()] for r in range(2)]
    assert rows == [["0", "1"], ["1", "0"]]


def test_twist_out_verifies(capsys, tmp_path):
    out = tmp_path / "twisted.qba"
    rc, _, _ = run(
        capsys,
        ["twist", str(DATA / "h2.qba"), str(DATA / "h2_gauge.json"), "--out", str(out)],
    )
    assert rc == 0
    assert run(capsys, ["verify", str(out)])[0] == 0
    assert run(capsys, ["preantipode", str(out)])[0] == 0


def test_majid_with_supplied_map_document(capsys, tmp_path):
    # on the group base of h2, inversion is the identity matrix
    s_path = tmp_path / "s.json"
    ff.save_document(
        str(s_path),
        {
            "format": "qhopf/1",
            "kind": "preantipode",
            "dim": 2,
            "s": [["1", "0"], ["0", "1"]],
        },
    )
    emitted = tmp_path / "triple.json"
    rc, out, _ = run(
        capsys,
        ["majid", str(DATA / "h2.qba"), "--s", str(s_path), "--emit", str(emitted)],
    )
    assert rc == 0
    assert out == (GOLDEN / "majid_h2.txt").read_text()
    q = ff.parse_quasi_bialgebra(ff.load_document(str(DATA / "h2.qba")))
    ff.parse_quasi_antipode(ff.load_document(str(emitted)), q)


def test_bc_check_with_supplied_antipode(capsys):
    rc, out, _ = run(
        capsys,
        [
            "bc-check",
            str(DATA / "h2.qba"),
            "--module",
            "square",
            "--antipode",
            str(DATA / "h2_antipode.json"),
        ],
    )
    assert rc == 0
    assert "result: PASS" in out


def test_module_file_input(capsys, tmp_path):
    q = ff.parse_quasi_bialgebra(ff.load_document(str(DATA / "h2.qba")))
    M = G_of(q, LeftModule.regular(q))
    path = tmp_path / "module.json"
    ff.save_document(str(path), ff.emit_bimodule(q, M))
    for command in ["bimodule-check", "structure-theorem", "bc-check"]:
        rc, out, _ = run(capsys, [command, str(DATA / "h2.qba"), "--module-file", str(path)])
        assert rc == 0, command
        assert "result: PASS" in out


def test_all_module_builders(capsys):
    for module in ["regular", "trivial", "square"]:
        rc, _, _ = run(capsys, ["bimodule-check", str(DATA / "h4.qba"), "--module", module])
        assert rc == 0, module
