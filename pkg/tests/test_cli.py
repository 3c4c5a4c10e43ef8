import json
import subprocess
import sys

import pytest

from chipfire import format_digraph
from chipfire.cli import main
from conftest import SIX_X, SIX_Y, six_graph


@pytest.fixture
def files(tmp_path):
    ex = tmp_path / "ex.cf"
    ex.write_text(format_digraph(six_graph(), comment="worked example"))
    tri = tmp_path / "triangle.cf"
    tri.write_text("3\n0 1 0\n0 0 1\n1 0 0\n")
    dbl = tmp_path / "doubled.cf"
    dbl.write_text("2\n0 2\n2 0\n")
    x = tmp_path / "x.dist"
    x.write_text(" ".join(map(str, SIX_X)) + "\n")
    y = tmp_path / "y.dist"
    y.write_text(" ".join(map(str, SIX_Y)) + "\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_reach_six_no(files, capsys):
    cert = files / "c.json"
    code, out, _ = run(capsys, "reach", "--graph", files / "ex.cf", "--from", files / "x.dist",
                       "--to", files / "y.dist", "--cert", cert)
    assert code == 1
    assert "method: greedy_general" in out
    assert str(cert) in out
    assert json.loads(cert.read_text()) == {"type": "nonreach", "f": [1, 1, 0, 0, 0, 0],
                                            "g": [0] * 6}


def test_reach_identity_inline(files, capsys):
    code, out, _ = run(capsys, "reach", "--graph", files / "triangle.cf",
                       "--from", "1 0 0", "--to", "1 0 0")
    assert code == 0
    assert "(empty game)" in out


def test_reach_json_and_witness(files, capsys):
    w = files / "w.json"
    code, out, _ = run(capsys, "reach", "--graph", files / "triangle.cf", "--from", "1 0 0",
                       "--to", "0 1 0", "--witness", w, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "eulerian"
    assert payload["witness"] == {"type": "game", "firings": [[1, 1]]}
    assert json.loads(w.read_text()) == payload["witness"]


@pytest.mark.parametrize("method", ["eulerian", "recurrent", "greedy", "oracle", "auto"])
def test_reach_methods(files, capsys, method):
    code, out, _ = run(capsys, "reach", "--graph", files / "triangle.cf", "--from", "1 0 0",
                       "--to", "0 0 1", "--method", method, "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "YES"


def test_reach_recurrent_not_applicable(files, capsys):
    code, out, _ = run(capsys, "reach", "--graph", files / "ex.cf", "--from", files / "x.dist",
                       "--to", files / "y.dist", "--method", "recurrent")
    assert code == 3
    assert "NOT_APPLICABLE" in out


def test_verify_cert(files, capsys):
    cert = files / "c.json"
    cert.write_text(json.dumps({"type": "nonreach", "f": [1, 1, 0, 0, 0, 0], "g": [0] * 6}))
    args = ["verify-cert", "--graph", files / "ex.cf", "--from", files / "x.dist",
            "--to", files / "y.dist", "--cert", cert]
    assert run(capsys, *args)[0] == 0
    cert.write_text(json.dumps({"type": "nonreach", "f": [1, 1, 0, 0, 0, 0],
                                "g": [1, 1, 0, 0, 0, 0]}))
    assert run(capsys, *args)[0] == 1


def test_halt_and_verify(files, capsys):
    cert = files / "h.json"
    code, out, _ = run(capsys, "halt", "--graph", files / "doubled.cf", "--dist", "2 2",
                       "--cert", cert)
    assert code == 1
    assert json.loads(cert.read_text()) == {"type": "nonterminating", "y": [2, 2]}
    assert run(capsys, "verify-halt-cert", "--graph", files / "doubled.cf", "--dist", "2 2",
               "--cert", cert)[0] == 0
    assert run(capsys, "verify-halt-cert", "--graph", files / "doubled.cf", "--dist", "1 1",
               "--cert", cert)[0] == 1
    assert run(capsys, "halt", "--graph", files / "doubled.cf", "--dist", "1 1")[0] == 0


def test_halt_budget(files, capsys):
    code, _, _ = run(capsys, "halt", "--graph", files / "triangle.cf", "--dist", "5 0 0",
                     "--state-cap", "1")
    assert code == 3


def test_recurrent(files, capsys):
    assert run(capsys, "recurrent", "--graph", files / "triangle.cf", "--dist", "1 0 0")[0] == 0
    assert run(capsys, "recurrent", "--graph", files / "doubled.cf", "--dist", "1 1")[0] == 1
    code, _, err = run(capsys, "recurrent", "--graph", files / "ex.cf", "--dist", files / "y.dist")
    assert code == 2 and "strongly connected" in err


def test_period(files, capsys):
    code, out, _ = run(capsys, "period", "--graph", files / "ex.cf", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["per"] == 6
    assert payload["components"][1] == {"vertices": [5, 6], "sink": True, "period": [1, 1]}


def test_oracle(files, capsys):
    code, out, _ = run(capsys, "oracle", "--graph", files / "ex.cf", "--from", files / "x.dist",
                       "--to", files / "y.dist")
    assert code == 1 and "method: oracle" in out
    assert run(capsys, "oracle", "--graph", files / "triangle.cf", "--from", "9 0 0",
               "--to", "0 0 9", "--max-states", "2")[0] == 3


def test_errors_exit_2(files, capsys):
    bad = files / "bad.cf"
    bad.write_text("2\n1 1\n1 0\n")
    assert run(capsys, "period", "--graph", bad)[0] == 2
    assert run(capsys, "reach", "--graph", files / "triangle.cf", "--from", "1 0",
               "--to", "1 0 0")[0] == 2
    assert run(capsys, "period", "--graph", files / "missing.cf")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["reach"])
    assert exc.value.code == 2


def test_env_budget(files, capsys, monkeypatch):
    monkeypatch.setenv("CHIPFIRE_DEFAULT_BUDGET", "5")
    code, out, _ = run(capsys, "reach", "--graph", files / "triangle.cf", "--from", "9 0 0",
                       "--to", "0 0 9", "--method", "greedy")
    assert code == 3
    monkeypatch.setenv("CHIPFIRE_DEFAULT_BUDGET", "zero")
    assert run(capsys, "reach", "--graph", files / "triangle.cf", "--from", "9 0 0",
               "--to", "0 0 9", "--method", "greedy")[0] == 2


def test_gen_deterministic(files, capsys):
    outs = []
    for kind in ("eulerian", "general", "strong", "dist"):
        a = run(capsys, "gen", "--kind", kind, "--n", "5", "--chips", "7", "--seed", "11")
        b = run(capsys, "gen", "--kind", kind, "--n", "5", "--chips", "7", "--seed", "11")
        assert a == b and a[0] == 0
        outs.append(a[1])
    from chipfire import parse_digraph, is_eulerian
    assert is_eulerian(parse_digraph(outs[0]))
    assert len(parse_digraph(outs[2]).scc) == 1
    assert sum(map(int, outs[3].split())) == 7
    dest = files / "g.cf"
    assert run(capsys, "gen", "--n", "4", "--seed", "1", "--out", dest)[0] == 0
    assert parse_digraph(dest.read_text()).n == 4


def test_json_output_byte_identical(files, capsys):
    args = ["reach", "--graph", files / "ex.cf", "--from", files / "x.dist",
            "--to", files / "y.dist", "--json"]
    assert run(capsys, *args) == run(capsys, *args)


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--n", "4", "--chips", "5", "--count", "100")
    assert code == 0 and "disagree: 0" in out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "chipfire", "period", "--graph",
                           str(files / "triangle.cf")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "per(G) = 3" in proc.stdout
