import io
import json

import numpy as np
import pytest
from hypothesis import given

from adjspec.cli import main, matrix_document, parse_matrix
from adjspec.errors import ParseError
from strategies import exact_matrices


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, doc, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_charpoly(capsys, fixtures_dir, tmp_path):
    code, doc, _ = run(capsys, "charpoly", fixtures_dir / "example1.json")
    assert code == 0 and doc["p"] == "z^3 - 3z^2" and doc["alphas"] == ["-3", "0", "0"]
    code, doc, _ = run(capsys, "charpoly", fixtures_dir / "example2.json", "--with-faddeev")
    assert doc["p"] == "z^4 - 2z^2 + 1" and len(doc["C_seq"]) == 4
    code, doc, _ = run(capsys, "charpoly", write(tmp_path, {"mode": "exact", "rows": [["5"]]}))
    assert doc["p"] == "z - 5"


def test_adjugate(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "adjugate", fixtures_dir / "example2.json")
    assert code == 0 and doc["entries"][3][0] == "-3z^2 - 6z - 3"


def test_spectral_examples(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "spectral", fixtures_dir / "example1.json")
    assert code == 0
    comps = {c["lambda"]: c for c in doc["components"]}
    assert comps["0"]["P"] == [["2/3", "1/3", "-1/3"], ["1/3", "2/3", "1/3"], ["-1/3", "1/3", "2/3"]]
    assert comps["3"]["P"][0] == ["1/3", "-1/3", "1/3"]
    code, doc, _ = run(capsys, "spectral", fixtures_dir / "example2.json")
    comps = {c["lambda"]: c for c in doc["components"]}
    assert comps["1"]["P"][2] == ["12", "8", "-4", "-5"]
    assert comps["-1"]["N"][0] == ["-5", "-3", "2", "2"]


def test_irrational_spectrum_exit_3(capsys, fixtures_dir):
    code, doc, err = run(capsys, "spectral", fixtures_dir / "sqrt2_companion.json")
    assert code == 3 and doc is None and "--eigenvalues" in err
    code, doc, _ = run(capsys, "spectral", fixtures_dir / "sqrt2_companion.json", "--mode", "approx")
    assert code == 0 and [c["multiplicity"] for c in doc["components"]] == [1, 1]


def test_inconsistent_spectrum_exit_4(capsys, fixtures_dir):
    code, _, _ = run(capsys, "spectral", fixtures_dir / "example1.json", "--eigenvalues", "0:1,3:2")
    assert code == 4
    code, _, _ = run(capsys, "spectral", fixtures_dir / "example1.json", "--eigenvalues", "0:2")
    assert code == 4


def test_parse_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "charpoly", write(tmp_path, {"mode": "exact", "rows": [["1", "2"]]}))[0] == 2
    assert run(capsys, "charpoly", write(tmp_path, {"mode": "exact", "rows": [["x"]]}))[0] == 2
    assert run(capsys, "charpoly", write(tmp_path, {"mode": "exact", "rows": [[0.5]]}))[0] == 2
    assert run(capsys, "charpoly", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "charpoly", write(tmp_path, {"mode": "approx", "rows": [[1.0]]}), "--mode", "exact")[0] == 2
    assert run(capsys, "funcalc", write(tmp_path, {"rows": [["1"]]}), "--fn", "sin")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_jordan(capsys, fixtures_dir, tmp_path):
    code, doc, _ = run(capsys, "jordan", fixtures_dir / "example2.json", "--chains")
    blocks = {e["lambda"]: e["block_sizes"] for e in doc["eigenvalues"]}
    assert blocks == {"1": [2], "-1": [2]}
    assert all(len(e["chains"]) == 1 and len(e["chains"][0]) == 2 for e in doc["eigenvalues"])
    code, doc, _ = run(capsys, "jordan", fixtures_dir / "example1.json")
    assert {e["lambda"]: e["block_sizes"] for e in doc["eigenvalues"]} == {"0": [1, 1], "3": [1]}
    ident = write(tmp_path, {"rows": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})
    code, doc, _ = run(capsys, "jordan", ident)
    assert doc["eigenvalues"][0]["block_sizes"] == [1, 1, 1]


def test_funcalc_exp(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "funcalc", fixtures_dir / "example2_approx.json", "--fn", "exp")
    assert code == 0
    assert abs(doc["matrix"][3][0]["re"] + 3 * np.e) < 1e-9
    assert abs(doc["matrix"][3][0]["re"] - (-8.154845485377136)) < 1e-12


def test_funcalc_exact_power(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "funcalc", fixtures_dir / "example2.json", "--fn", "power:1")
    assert doc["matrix"] == json.load(open(fixtures_dir / "example2.json"))["rows"]


def test_verify(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "verify", fixtures_dir / "example1.json")
    assert code == 0 and doc["pass"]
    assert set(doc["residuals"].values()) == {"0"}
    code, doc, _ = run(capsys, "verify", fixtures_dir / "example1_approx.json", "--contour")
    assert code == 0 and doc["pass"]
    assert all(d["projector"] < 1e-9 and d["nilpotent"] < 1e-9 for d in doc["contour"])


def test_verify_failure_exit_5(capsys, fixtures_dir):
    code, doc, _ = run(capsys, "verify", fixtures_dir / "example1.json", "--eigenvalues", "0:1,3:2")
    assert code == 5 and not doc["pass"]
    code, doc, _ = run(capsys, "verify", fixtures_dir / "example2_approx.json", "--threshold", "1e-300")
    assert doc["pass"] == all(v <= doc["thresholds"][k] for k, v in doc["residuals"].items())


def test_output_file_and_determinism(capsys, fixtures_dir, tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["spectral", str(fixtures_dir / "example2_approx.json"), "--output", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_stdin(capsys, fixtures_dir, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO((fixtures_dir / "example1.json").read_text()))
    code, doc, _ = run(capsys, "charpoly", "-")
    assert doc["p"] == "z^3 - 3z^2"


def test_parse_matrix_rejects():
    with pytest.raises(ParseError):
        parse_matrix([[1]])
    with pytest.raises(ParseError):
        parse_matrix({"mode": "fuzzy", "rows": [[1]]})
    with pytest.raises(ParseError):
        parse_matrix({"mode": "approx", "rows": [[float("nan")]]})


@given(exact_matrices(max_n=4))
def test_round_trip(A):
    doc = matrix_document(A)
    again = parse_matrix(json.loads(json.dumps(doc)))
    assert (again == A).all()
    assert matrix_document(again) == doc
