import json
import shutil
import subprocess
from pathlib import Path

import pytest

from lpbn.cli import main

DATA = Path(__file__).parent / "data"
P1 = str(DATA / "p1.lp")
HIDDEN_LOOP = str(DATA / "hidden_loop.lp")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", P1)
    assert code == 0 and out == "p :- not q.\nq :- not p.\nr :- q.\n"


def test_models_regular(capsys):
    code, out, _ = run(capsys, "models", P1, "--regular")
    assert code == 0
    assert json.loads(out) == [{"p": "t", "q": "f", "r": "f"}, {"p": "f", "q": "t", "r": "t"}]


@pytest.mark.parametrize(
    "flag, count",
    [("--stable", 2), ("--stable-partial", 3), ("--supported-partial", 3), ("--stable-trap-spaces", 5),
     ("--supported-trap-spaces", 5)],
)
def test_models_kinds(capsys, flag, count):
    code, out, _ = run(capsys, "models", P1, flag)
    assert code == 0 and len(json.loads(out)) == count


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", P1)
    got = json.loads(out)
    assert code == 0 and got["tight"] and got["pos_fvs"] == ["p"] and got["k"] == 1


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", P1)
    assert json.loads(out)["arcs"] == [["p", "q", "-"], ["q", "p", "-"], ["q", "r", "+"]]
    code, out, _ = run(capsys, "graph", P1, "--positive", "--dot")
    assert code == 0 and out.startswith("digraph pdg {") and "dashed" not in out


def test_lfp(capsys):
    code, out, _ = run(capsys, "lfp", HIDDEN_LOOP)
    assert code == 0 and out == "a :- not a, not b.\nb :- not a, not b.\nc :- not a, not b.\n"


def test_bn_verbs(capsys):
    assert json.loads(run(capsys, "bn", P1, "--attractors")[1]) == [["100"], ["110", "001"], ["011"]]
    bn_file = str(DATA / "p1.bn")
    assert json.loads(run(capsys, "bn", bn_file, "--stg", "async", "--attractors")[1]) == [["100"], ["011"]]
    assert len(json.loads(run(capsys, "bn", bn_file, "--trap-spaces")[1])) == 5
    assert len(json.loads(run(capsys, "bn", P1, "--min-trap-spaces")[1])) == 2
    assert len(json.loads(run(capsys, "bn", P1, "--stg", "sync")[1])) == 8
    assert len(json.loads(run(capsys, "bn", P1, "--influence")[1])["arcs"]) == 3


def test_dynamics(capsys):
    code, out, _ = run(capsys, "dynamics", P1, "--tgst")
    assert code == 0 and len(json.loads(out)) == 8
    code, dot1, _ = run(capsys, "dynamics", P1, "--tgsp", "--dot")
    _, dot2, _ = run(capsys, "dynamics", P1, "--tgsp", "--dot")
    assert dot1 == dot2 and "s0 -> s3;" in dot1


def test_check_file(capsys):
    code, out, _ = run(capsys, "check", P1, "--suite", "all")
    assert code == 0
    assert {r["verdict"] for r in json.loads(out)} <= {"holds", "skipped-precondition"}


def test_check_random_is_reproducible(capsys):
    argv = ["check", "--random", "n_atoms=4,n_rules=6,seed=3", "--trials", "10", "--suite", "fvs_bounds"]
    code, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert code == 0 and out1 == out2
    assert json.loads(out1)["verdicts"]["fvs_bounds"]["holds"] == 10


def test_check_violation_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.lp"
    bad.write_text("x0 :- not x0.\nx1 :- x0, not x0.\n")
    code, out, _ = run(capsys, "check", str(bad), "--suite", "supported_ts_cover")
    assert code == 4 and json.loads(out)[0]["witness"]["program"]


def test_hunter_via_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--random", "n_atoms=5,n_rules=8,seed=1", "--suite", "conjecture_2k",
                       "--trials", "20", "--witness-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["stats"]["trials"] == 20


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "n_atoms=3,n_rules=4,seed=5")
    assert code == 0 and out.startswith("x0 :- x0, not x0, not x1.\n")


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "models", P1)[0] == 1
    assert run(capsys, "check", P1, "--suite", "nope")[0] == 1
    assert run(capsys, "bn", P1)[0] == 1
    assert run(capsys, "parse", str(tmp_path / "missing.lp"))[0] == 1
    bad = tmp_path / "bad.lp"
    bad.write_text("p :- X.\n")
    code, _, err = run(capsys, "parse", str(bad))
    assert code == 2 and "1:6" in err
    bad_bn = tmp_path / "bad.bn"
    bad_bn.write_text("p = q\n")
    assert run(capsys, "bn", str(bad_bn), "--trap-spaces")[0] == 2
    assert run(capsys, "models", P1, "--regular", "--max-atoms-3v", "2")[0] == 3
    assert run(capsys, "dynamics", P1, "--tgst", "--max-atoms-2v", "2")[0] == 3


@pytest.mark.skipif(shutil.which("lpbn") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["lpbn", "models", P1, "--regular"], capture_output=True, text=True)
    assert res.returncode == 0 and len(json.loads(res.stdout)) == 2
