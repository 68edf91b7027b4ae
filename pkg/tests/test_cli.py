from __future__ import annotations

import io
import json

import pytest

from braiddeform.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_count_all_methods():
    code, text = call("count", "--S", "0,1", "--n", "4", "--method", "all")
    assert code == 0
    assert json.loads(text) == {"signed": 125, "unsigned": 125, "whitney": 125, "sketch": 125, "agree": True}


def test_count_negative_offsets_and_csv():
    code, text = call("count", "--S", "-1,0,1", "--n", "3", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["method,regions", "signed,30", "unsigned,30", "whitney,30", "sketch,30"]


def test_count_non_transitive():
    code, text = call("count", "--S", "-2,0,2", "--n", "3")
    data = json.loads(text)
    assert code == 0 and data["unsigned"] is None and data["signed"] == data["whitney"] == 30
    assert call("count", "--S", "-2,0,2", "--n", "3", "--method", "unsigned")[0] == 1


def test_poly_characteristic():
    code, text = call("poly", "--S", "0", "--n", "3", "--kind", "characteristic")
    data = json.loads(text)
    assert code == 0
    assert data["polynomial"] == {"q^3": "1", "q^2": "-3", "q^1": "2"}
    assert data["regions"] == 6


def test_poly_methods_agree():
    a = json.loads(call("poly", "--S", "-1,1", "--n", "3", "--kind", "coboundary")[1])
    b = json.loads(call("poly", "--S", "-1,1", "--n", "3", "--kind", "coboundary", "--method", "trees")[1])
    assert a == b
    tutte = json.loads(call("poly", "--S", "-1,0,1", "--n", "2", "--kind", "tutte")[1])
    assert tutte["text"] == "x + 2"


def test_series_two_types(tmp_path):
    path = tmp_path / "twotypes.json"
    path.write_text(json.dumps({"N": 2, "sets": {"1,1": [-2, -1, 0, 1, 2], "1,2": [-1, 0, 1, 2], "2,2": [-2, 0, 1, 2]}}))
    code, text = call("series", "--spec", str(path), "--trunc", "3")
    coeffs = json.loads(text)["coeffs"]
    assert code == 0
    assert coeffs["t1^2"] == "3" and coeffs["t1^2 t2^1"] == "28" and coeffs["t2^3"] == "17/2"
    assert text == call("series", "--spec", str(path), "--trunc", "3")[1]


def test_trees_and_sampling():
    data = json.loads(call("trees", "--S", "0,1", "--n", "2")[1])
    assert data == {"count": 3, "trees": ["(1 (2 . .) .)", "(2 (1 . .) .)", "(2 . (1 . .))"]}
    assert json.loads(call("trees", "--S", "0,1", "--n", "2", "--all", "--count-only")[1]) == {"count": 4}
    a = call("trees", "--S", "0", "--n", "4", "--sample", "3", "--seed", "5")[1]
    assert a == call("trees", "--S", "0", "--n", "4", "--sample", "3", "--seed", "5")[1]
    assert call("trees", "--S", "-2,0,2", "--n", "2")[0] == 1


def test_bijection_actions():
    data = json.loads(call("bijection", "--S", "0,1", "--n", "2", "--action", "tree-to-region", "--tree", "(1 (2 . .) .)")[1])
    assert data["sketch"] == "a1^0 a2^0 a1^1 a2^1"
    assert [r["sign"] for r in data["region"]] == ["-", "-"]
    assert json.loads(call("bijection", "--action", "parking", "--tree", "(1 . .)")[1])["pak_stanley"] == [0]
    assert json.loads(call("bijection", "--action", "theta", "--tree", "(2 (1 . .) .)")[1])["theta"] == "(1 . (2 . .))"
    phi = json.loads(call("bijection", "--action", "phi", "--sketch", "a1^0 a2^0 a1^1 a3^0 a2^1 a3^1")[1])
    assert phi["tree"] == "(1 (2 . .) (3 . .))"
    assert phi["point"] == {"1": "0/1", "2": "1/2", "3": "5/4"}
    code, text = call("bijection", "--S", "-1,1", "--n", "3", "--action", "audit")
    assert code == 0 and json.loads(text)["maximality"]["regions"] == 19


def test_configs_csv():
    code, text = call("configs", "--m", "1", "--size", "2", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["gaps,word,width", ",1.1,2", "0,1.1 1.2,2", "1,1.1 1.2,3", "1,1.2 1.1,3"]


@pytest.mark.parametrize("argv", [
    ["count"],
    ["nope"],
    ["poly", "--S", "0", "--n", "3", "--format", "csv"],
    ["count", "--spec", "/nonexistent.json"],
    ["bijection", "--action", "psi"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, out=io.StringIO()) == 1
    assert capsys.readouterr().err


def test_verify_tiny():
    code, text = call("verify", "--scale", "tiny")
    assert code == 0
    assert all(row["ok"] for row in json.loads(text))
