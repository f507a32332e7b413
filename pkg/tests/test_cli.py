import json
import subprocess
import sys

import numpy as np
import pytest

from fibrate.cli import main


def run(*argv):
    return main(list(argv))


@pytest.fixture
def pair(tmp_path):
    a, b = tmp_path / "A.json", tmp_path / "B.json"
    assert run("ocs", "random", "--n", "2", "--sign", "1", "--seed", "3", "-o", str(a)) == 0
    assert run("ocs", "random", "--n", "2", "--sign", "-1", "--seed", "4", "-o", str(b)) == 0
    return a, b


def test_ocs_agree(pair, capsys):
    assert run("ocs", "agree", *map(str, pair)) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["dimension"] == 2 and out["mod4"] == 2
    assert out["basis"]["rows"] == 4 and out["basis"]["cols"] == 2


def test_ocs_sign_and_pair_bases(pair, capsys):
    assert run("ocs", "sign", str(pair[1])) == 0
    assert json.loads(capsys.readouterr().out)["sign"] == -1
    assert run("ocs", "pair-bases", *map(str, pair), "--point", "0,1,0,0") == 0
    assert json.loads(capsys.readouterr().out)["corner"] == -1


@pytest.fixture
def spec(tmp_path):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"variant": "graph", "p": [1, 0, 0, 0], "chirality": "negative",
                             "map": {"kind": "contraction", "c": [0, 0, 1], "lambda": 0.5,
                                     "rotation": np.eye(3).tolist()}}))
    return f


def test_fib_lookup_sign_check(spec, capsys, tmp_path):
    assert run("fib", "lookup", "--spec", str(spec), "--point", "1,2,3,4") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["containment_residual"] < 1e-7
    assert run("fib", "sign", "--spec", str(spec)) == 0
    assert json.loads(capsys.readouterr().out)["sign"] == -1
    report = tmp_path / "r.json"
    assert run("fib", "check", "--spec", str(spec), "-o", str(report)) == 0
    assert json.loads(report.read_text())["passed"] is True


def test_darboux(tmp_path, capsys):
    a = tmp_path / "a.json"
    a.write_text(json.dumps({"coords": [1, 2, 3, 4, 5, 6]}))
    assert run("darboux", "--alpha", str(a)) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"a", "P", "b", "Q", "reconstruction_error"}
    assert out["reconstruction_error"] < 1e-9


@pytest.mark.parametrize("which", ["s7-nonexistence", "s7-nonuniqueness", "chart-n3"])
def test_counterexamples(which, capsys):
    assert run("counterexample", which) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and out["matrices"]


def test_chart_n3_dims(capsys):
    run("counterexample", "chart-n3")
    dims = [c["stats"]["dimension"] for c in json.loads(capsys.readouterr().out)["checks"]]
    assert dims == [6, 4]


def test_quat_commands(tmp_path, capsys):
    from fibrate.suites import random_quat
    a, b = tmp_path / "A.json", tmp_path / "B.json"
    a.write_text(json.dumps(random_quat(1, 1, 0).to_json()))
    b.write_text(json.dumps(random_quat(1, -1, 1).to_json()))
    assert run("quat", "sign", str(b)) == 0
    assert json.loads(capsys.readouterr().out)["sign"] == -1
    assert run("quat", "agree", str(a), str(b), "--point", "1,0,0,0") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] in ("agree_oriented", "agree_unoriented_only", "disagree")
    assert out["triple_kernel"]["dimension"] >= 1
    assert run("quat", "counterexample") == 0


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        run("verify", "ocs", "--trials", "0")
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run("verify", "nonsense")
    assert err.value.code == 2


def test_schema_errors_name_the_field(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rows": 4, "cols": 4, "data": [1]}))
    assert run("ocs", "sign", str(bad)) == 2
    assert "A.data" in capsys.readouterr().err
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"variant": "graph", "p": [1, 0, 0, 0],
                                "map": {"kind": "contraction", "c": [0, 0, 1], "lambda": 1.5}}))
    assert run("fib", "sign", "--spec", str(spec)) == 2
    assert "spec.map" in capsys.readouterr().err
    notjson = tmp_path / "x.json"
    notjson.write_text("{")
    assert run("darboux", "--alpha", str(notjson)) == 2
    assert run("darboux", "--alpha", str(tmp_path / "missing.json")) == 2


def test_failed_check_exits_1(tmp_path, capsys, monkeypatch):
    # a fibration whose map is not a contraction fails disjointness
    from fibrate import cli, gcfib
    bad = gcfib.Fibration.graph(np.eye(4)[0], gcfib.SphereMap.contraction([1, 0, 0], 1.2), certify=False)
    monkeypatch.setattr(cli, "_load_fibration", lambda args: bad)
    assert run("fib", "check", "--spec", "unused", "--samples", "20") == 1


def test_verify_json_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run("verify", "quat", "--trials", "20", "--seed", "5", "--json", str(p)) == 0
    docs = [json.loads(p.read_text()) for p in paths]
    for d in docs:
        d.pop("elapsed_ms")
    assert docs[0] == docs[1]
    assert docs[0]["schema"] == 1 and docs[0]["seed"] == 5


def test_seed_env_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FIBRATE_SEED", "17")
    out = tmp_path / "r.json"
    assert run("verify", "grassmann", "--trials", "10", "--json", str(out)) == 0
    assert json.loads(out.read_text())["seed"] == 17
    monkeypatch.setenv("FIBRATE_SEED", "x")
    assert run("verify", "grassmann", "--trials", "10") == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fibrate.cli", "counterexample", "chart-n3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
