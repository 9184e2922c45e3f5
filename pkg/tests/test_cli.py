import csv
import io
import json
import math

import pytest

from hnkspaces.cli import CSV_COLUMNS, main, resolve_seed
from hnkspaces.linalg import ExactMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def basis_json(capsys, n, k, i):
    code, out, _ = run(capsys, "basis", "--n", str(n), "--k", str(k), "--i", str(i), "--format", "json")
    assert code == 0
    obj = json.loads(out)
    return obj, ExactMatrix.from_json(obj["basis"][0]["matrix"]).data.tolist()


def test_basis_examples(capsys):
    _, m = basis_json(capsys, 2, 1, 1)
    assert m == [[0], [1]]
    obj, m = basis_json(capsys, 3, 2, 1)
    assert obj["row_subsets"] == [[1], [2], [3]] and obj["col_subsets"] == [[1], [2], [3]]
    assert m == [[0, 0, 0], [0, 0, 1], [0, -1, 0]]
    _, m = basis_json(capsys, 1, 1, 1)
    assert m == [[1]]


def test_basis_json_schema(capsys):
    code, out, _ = run(capsys, "basis", "--n", "4", "--k", "2", "--format", "json")
    obj = json.loads(out)
    assert set(obj) == {"n", "k", "row_subsets", "col_subsets", "basis"}
    assert [b["i"] for b in obj["basis"]] == [1, 2, 3, 4]
    mat = obj["basis"][0]["matrix"]
    assert mat["rows"] == 6 and mat["cols"] == 4
    assert all(len(e) == 4 for e in mat["entries"])


def test_basis_pretty(capsys):
    code, out, _ = run(capsys, "basis", "--n", "3", "--k", "2", "--i", "1")
    assert code == 0 and "-1" in out and "+1" in out


@pytest.mark.parametrize("argv", [["basis", "--n", "3", "--k", "4"], ["basis", "--n", "17", "--k", "1"],
                                  ["basis", "--n", "3", "--k", "0"]])
def test_basis_out_of_range(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_basis_soft_cap_warns(capsys):
    with pytest.warns(UserWarning):
        code, _, _ = run(capsys, "basis", "--n", "13", "--k", "1", "--i", "1", "--format", "json")
    assert code == 0


def test_unknown_suite_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_verify_nmax_over_limit(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "intertwine", "--nmax", "9")
    assert code == 2


def test_verify_intertwine_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--suite", "intertwine", "--nmax", "4", "--out", str(path))
    rep = json.loads(path.read_text())
    assert code == 0 and rep["status"] == "pass"
    assert set(rep) == {"suite", "seed", "version", "cases", "status"}
    assert all(set(c) == {"id", "params", "status", "max_abs_err", "elapsed_ms"} for c in rep["cases"])
    assert all(c["max_abs_err"] == 0 for c in rep["cases"] if "intertwining" in c["id"])


def test_verify_car(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "car", "--nmax", "5")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_verify_distance_seed(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "distance", "--nmax", "5", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 7
    assert all(c["max_abs_err"] < 1e-9 for c in rep["cases"])


def test_verify_failure_exit_1(capsys, monkeypatch):
    import hnkspaces.verify as verify

    def broken(nmax, seed):
        yield "always_wrong", {}, False, 1.0
    monkeypatch.setitem(verify.SUITES, "combinat", broken)
    code, out, _ = run(capsys, "verify", "--suite", "combinat")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_verify_deterministic(capsys):
    strip = lambda rep: [{k: v for k, v in c.items() if k != "elapsed_ms"} for c in rep["cases"]]
    _, a, _ = run(capsys, "verify", "--suite", "spectra", "--nmax", "3", "--seed", "4")
    _, b, _ = run(capsys, "verify", "--suite", "spectra", "--nmax", "3", "--seed", "4")
    assert strip(json.loads(a)) == strip(json.loads(b))


def test_seed_precedence(monkeypatch):
    monkeypatch.delenv("HNK_SEED", raising=False)
    assert resolve_seed(None) == 0
    monkeypatch.setenv("HNK_SEED", "11")
    assert resolve_seed(None) == 11
    assert resolve_seed(3) == 3


def test_seed_env_reaches_report(capsys, monkeypatch):
    monkeypatch.setenv("HNK_SEED", "5")
    _, out, _ = run(capsys, "verify", "--suite", "combinat", "--nmax", "3")
    assert json.loads(out)["seed"] == 5
    _, out, _ = run(capsys, "verify", "--suite", "combinat", "--nmax", "3", "--seed", "2")
    assert json.loads(out)["seed"] == 2


def test_distance_csv(capsys):
    code, out, _ = run(capsys, "distance", "--nmax", "5", "--target", "column")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == CSV_COLUMNS
    pick = {(int(r["n"]), int(r["k"])): float(r["distance"]) for r in rows}
    assert abs(pick[4, 2] - math.sqrt(8 / 3)) < 1e-9
    assert abs(pick[5, 5] - 5) < 1e-12
    assert abs(pick[3, 1] - 1) < 1e-12
    assert len(rows) == 15


def test_distance_both_json_md(capsys):
    code, out, _ = run(capsys, "distance", "--nmax", "3", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and {r["target"] for r in rows} == {"column", "row"} and len(rows) == 12
    code, out, _ = run(capsys, "distance", "--nmax", "2", "--format", "md")
    assert code == 0 and out.splitlines()[0].startswith("| n | k | target")


def test_explore_examples(capsys):
    code, out, _ = run(capsys, "explore", "--n", "4", "--k1", "2", "--k2", "3", "--trials", "0")
    rep = json.loads(out)
    assert code == 0 and rep["heuristic"] is True and rep["estimate"] is None
    code, out, _ = run(capsys, "explore", "--n", "4", "--k1", "2", "--k2", "3", "--trials", "300", "--seed", "1")
    assert code == 0 and json.loads(out)["estimate"] >= 1


@pytest.mark.parametrize("k1,k2", [(1, 3), (3, 2), (2, 4), (2, 2)])
def test_explore_degenerate(capsys, k1, k2):
    code, _, _ = run(capsys, "explore", "--n", "4", "--k1", str(k1), "--k2", str(k2), "--trials", "0")
    assert code == 2


def test_spectra_file(capsys, tmp_path):
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps({"vectors": [[1, 0, 0], [[0, 1], 2, 0]], "k": 2}))
    code, out, _ = run(capsys, "spectra", "--file", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["n"] == 3 and rep["m"] == 2
    assert rep["levels"][0]["k"] == 2 and rep["levels"][0]["max_abs_err"] < 1e-10
