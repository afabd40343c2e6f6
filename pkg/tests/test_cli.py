import json

import pytest
from click.testing import CliRunner

from mldegree.cli import main
from mldegree.golden import session_path


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def out(result):
    return json.loads(result.output.splitlines()[0])


def test_mld_command():
    r = run("mld", session_path("cubic_S2"), "--seed", 4)
    assert r.exit_code == 0, r.output
    data = out(r)
    assert data["command"] == "mld" and data["value"] == 9
    assert data["seed"] == 4 and data["prime"] == 32003
    assert len(data["inputs"]["session"]) == 64


def test_same_seed_same_bytes():
    a = run("polar", session_path("cubic_S2"), "--seed", 17)
    b = run("polar", session_path("cubic_S2"), "--seed", 17)
    assert a.exit_code == 0 and a.output == b.output
    assert out(a)["vector"] == [6, 3]


def test_seed_is_echoed_when_drawn():
    data = out(run("polar", session_path("cubic_S2")))
    assert isinstance(data["seed"], int)


@pytest.mark.parametrize("args", [
    ("--prime", 4),
    ("--prime", 2),
    ("--trials", 0),
    ("--budget", 0),
    ("--seed", -1),
    ("--format", "xml"),
])
def test_bad_options_exit_2(args):
    r = run("mld", session_path("cubic_S2"), *args)
    assert r.exit_code == 2


def test_missing_file_exit_2(tmp_path):
    assert run("mld", tmp_path / "nope.txt").exit_code == 2


def test_malformed_session_exit_2(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("ring x; F = x +;")
    r = run("mld", p, "--seed", 1)
    assert r.exit_code == 2
    data = out(r)
    assert data["status"] == "input-error" and "column 16" in data["error"]


def test_false_verdict_exit_1():
    r = run("f-general", session_path("conic_mld1_S2"), "--seed", 1)
    assert r.exit_code == 1 and out(r)["value"] is False


def test_rank_two_family_rejected():
    assert run("s2-family", session_path("rank2_family")).exit_code == 2


def test_budget_exit_3():
    r = run("mld", session_path("cubic_S2"), "--seed", 1, "--budget", 1)
    assert r.exit_code == 3
    assert out(r)["status"] == "budget-exhausted"


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    r = run("pde-check", session_path("twisted_cubic_dual"), "--out", target)
    assert r.exit_code == 0
    assert target.read_text().strip() == r.output.strip()
    assert json.loads(target.read_text())["value"] is True


def test_text_output():
    r = run("mult", session_path("cuspidal_cubic"), "--format", "text")
    assert r.exit_code == 0 and "value: 2" in r.output.splitlines()


def test_gb_and_join():
    r = run("gb", session_path("twisted_cubic"), "--order", "lex")
    assert r.exit_code == 0 and len(out(r)["ideal"]) >= 3
    r = run("join", session_path("join_block"), session_path("join_corner"))
    assert r.exit_code == 0 and out(r)["pde"] is True


def test_phi_from_alpha_text():
    r = run("phi-from-alpha", session_path("cuspidal_cubic"), "--seed", 1)
    assert out(r)["value"] == "(216*v^2)/(4*u^3 - 54*u*v^2 + 27*v^2*w)"


def test_paper_examples_negative_control():
    r = run("paper-examples", "--criterion", 1, "--expect", "grad-mdeg/det_S3=[1,2,4,4,2,2]")
    assert r.exit_code == 1
    assert "FAIL" in r.output and "grad-mdeg/det_S3" in r.output


def test_paper_examples_unknown_row():
    assert run("paper-examples", "--expect", "no-such-row=1").exit_code == 2


def test_paper_examples_budget():
    assert run("paper-examples", "--criterion", 2, "--budget", 1).exit_code == 3
