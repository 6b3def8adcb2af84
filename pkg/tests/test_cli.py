import io
import json

import pytest

from toricglue.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main, parse_document, run_sweep
from toricglue.report import verify_document

FIRST = '{"n": 3, "c": 2, "a": [2, 0, 3], "b": [0, 2, 5]}'
PQ = '{"n": 3, "c": 6, "a": [6, 0, 5], "b": [0, 6, 7]}'
CODIM3 = '{"generators": [[3,0,3],[0,4,2],[3,2,1],[6,0,0],[0,6,0],[0,0,6]]}'


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_text(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["classify"], FIRST)
    assert code == EXIT_OK
    assert "exactly in characteristic 2" in out
    assert "F1 = y1^2 - x1^2 x3^3" in out and "F2 = y2^2 - x2^2 x3^5" in out


def test_classify_json_round_trip(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["classify", "--format", "json"], PQ)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["case"] == "no_prime" and doc["tool"] == "toricglue"
    assert verify_document(doc)


def test_tampered_document_fails(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["classify", "--format", "json"], FIRST)
    doc = json.loads(out)
    doc["certificate"]["left_coefficients"][0] += 1
    assert not verify_document(doc)


def test_binomials(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["binomials"], FIRST)
    assert code == EXIT_OK and out.splitlines() == ["F1 = y1^2 - x1^2 x3^3", "F2 = y2^2 - x2^2 x3^5"]
    code, out, _ = run(capsys, monkeypatch, ["binomials"], PQ)
    assert code == EXIT_OK and "none" in out
    code, _, err = run(capsys, monkeypatch, ["binomials", "--prime", "3"], FIRST)
    assert code == EXIT_INPUT and "not completely 3-glued" in err


def test_glue(capsys, monkeypatch, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(CODIM3)
    code, out, _ = run(capsys, monkeypatch, ["glue", str(path), "--partition", "0", "--prime", "2", "--format", "json"])
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "glued" and doc["certificate"]["k"] == 1
    code, out, _ = run(capsys, monkeypatch, ["glue", str(path), "--partition", "0", "--prime", "3", "--kmax", "8"])
    assert code == EXIT_OK and out.startswith("not_within_bound")


def test_completely_glued(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["completely-glued", "--prime", "3", "--format", "json"], CODIM3)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["verdict"] == "glued" and verify_document(doc)
    code, out, _ = run(capsys, monkeypatch, ["completely-glued", "--prime", "2", "--kmax", "8"], PQ)
    assert code == EXIT_OK and "no witness" in out


def test_kmax_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("TORICGLUE_KMAX", "0")
    code, out, _ = run(capsys, monkeypatch, ["glue", "--partition", "0", "--prime", "2"], CODIM3)
    assert code == EXIT_OK and out.startswith("not_within_bound")
    monkeypatch.setenv("TORICGLUE_KMAX", "x")
    code, _, _ = run(capsys, monkeypatch, ["glue", "--partition", "0", "--prime", "2"], CODIM3)
    assert code == EXIT_INPUT


@pytest.mark.parametrize("stdin,fragment", [
    ('{"c": 2.0, "a": [1], "b": [2]}', "non-integer"),
    ('{"c": 2, "a": [1,', "line 1"),
    ('{"c": true, "a": [1], "b": [2]}', "integer"),
    ('{"c": 2, "a": [1, 0], "b": [2, 0]}', "coordinate 2"),
    ('{"c": 2, "a": [1]}', "'b'"),
    ('[1, 2]', "JSON object"),
    ('{"c": 2, "a": [1], "b": [3], "config": {"bogus": 1}}', "config"),
])
def test_input_errors(capsys, monkeypatch, stdin, fragment):
    code, _, err = run(capsys, monkeypatch, ["classify"], stdin)
    assert code == EXIT_INPUT and fragment in err


def test_bad_arguments(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["glue", "--partition", "0", "--prime", "4"], CODIM3)[0] == EXIT_INPUT
    assert run(capsys, monkeypatch, ["glue", "--partition", "0,1,2,3,4,5"], CODIM3)[0] == EXIT_INPUT
    assert run(capsys, monkeypatch, ["classify", "/nonexistent/file.json"])[0] == EXIT_INPUT
    assert run(capsys, monkeypatch, ["--version"])[0] == EXIT_OK


def test_verify_deterministic(capsys, monkeypatch):
    code1, out1, _ = run(capsys, monkeypatch, ["verify", "--trials", "30", "--seed", "4", "--format", "json"])
    code2, out2, _ = run(capsys, monkeypatch, ["verify", "--trials", "30", "--seed", "4", "--format", "json"])
    assert code1 == code2 == EXIT_OK and out1 == out2
    assert json.loads(out1)["ok"] is True


def test_sweep(capsys, monkeypatch, tmp_path):
    out_file = tmp_path / "sweep.tsv"
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--c-range", "2,6", "--entry-bound", "6", "--out", str(out_file)])
    assert code == EXIT_OK
    rows = out_file.read_text().splitlines()
    assert rows[0].split("\t")[:4] == ["c", "a", "b", "case"]
    assert any("\tno_prime\t" in r for r in rows if r.startswith("6\t"))
    code, out, _ = run(capsys, monkeypatch, ["sweep", "--c-range", "2-3", "--entry-bound", "0"])
    assert code == EXIT_INPUT


def test_sweep_parallel_matches_serial():
    assert run_sweep([4, 6], 3, 3, jobs=2) == run_sweep([4, 6], 3, 3, jobs=1)


def test_parse_document_accepts_config():
    doc = parse_document('{"c": 2, "a": [1], "b": [3], "config": {"kmax": 4, "seed": 1}}')
    assert doc["config"]["kmax"] == 4
