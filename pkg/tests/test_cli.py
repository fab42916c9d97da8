import json
import os
import subprocess
import sys
from pathlib import Path

DATA = Path(__file__).parent / "data"


def run(*args, expect=0):
    env = dict(os.environ, COLUMNS="80")
    proc = subprocess.run(
        [sys.executable, "-m", "kohmoto.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == expect, (proc.returncode, proc.stderr)
    return proc.stdout


def test_farey_dist():
    out = run("farey", "dist", "0+", "1/7")
    assert out.splitlines()[-1] == "1/7"
    assert out.startswith("# kohmoto farey dist")


def test_farey_subcommands():
    assert run("farey", "mediant", "1/3", "1/2").splitlines()[-1] == "2/5"
    assert run("farey", "neighbors", "2/3", "3").splitlines()[-1] == "1/2 1/1"
    assert run("farey", "between", "3/8", "2/5").splitlines()[-1] == "2/5"
    assert "short [0, 0, 1, 3, 2]" in run("farey", "cf", "7/9")


def test_spectrum_bands_json_closed_forms():
    out = run("spectrum", "bands", "--r", "1/2", "--V", "5", "--tol", "1e-12", "--format", "json")
    obj = json.loads(out)
    bands = obj["result"]["bands"]
    assert len(bands) == 2
    from fractions import Fraction
    import math

    targets = [(5 - math.sqrt(41)) / 2, 0.0, 5.0, (5 + math.sqrt(41)) / 2]
    values = [float(Fraction(bands[0][0])), float(Fraction(bands[0][3])),
              float(Fraction(bands[1][0])), float(Fraction(bands[1][3]))]
    for got, want in zip(values, targets):
        assert abs(got - want) < 1e-9


def test_word_defect_text():
    out = run("word", "defect", "--r", "2/3", "--side", "plus")
    assert out.splitlines()[-1] == "(110)^inf [1] . (110)^inf"


def test_word_dict_and_complexity():
    out = run("word", "dict", "2/3", "--n", "2", "--format", "json")
    assert json.loads(out)["result"] == ["01", "10", "11"]
    out = run("word", "complexity", "0+", "--n", "4")
    assert out.splitlines()[-1] == "4 5"


def test_tree_commands():
    out = run("tree", "dist", "1/3+", "1/2-")
    assert out.splitlines()[-1] == "1/5"
    obj = json.loads(run("tree", "show", "--depth", "1", "--format", "json"))
    assert [row["label"] for row in obj["result"]] == ["[0,1]", "{0/1}", "(0/1,1/1)", "{1/1}"]


def test_exit_codes():
    run("farey", "dist", "bogus", "1/7", expect=2)
    run("analyze", "optimality", "--r", "1/2", "--side", "plus", "--V", "2", expect=4)
    run("spectrum", "defects", "--r", "7/9", "--side", "plus", "--V", "5",
        "--tol", "1e-40", "--kmax", "1", expect=3)
    run("spectrum", "bands", "--r", "1/2", "--V", "0", expect=2)
    # unknown flags are rejected by the parser
    env = dict(os.environ, COLUMNS="80")
    proc = subprocess.run(
        [sys.executable, "-m", "kohmoto.cli", "farey", "dist", "0+", "1/7", "--bogus"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 2


def test_idempotent_bytes():
    a = run("spectrum", "defects", "--r", "2/3", "--side", "plus", "--V", "5",
            "--tol", "1e-6", "--format", "json")
    b = run("spectrum", "defects", "--r", "2/3", "--side", "plus", "--V", "5",
            "--tol", "1e-6", "--format", "json")
    assert a == b


def test_help_golden():
    out = run("--help")
    assert out == (DATA / "help_main.txt").read_text()
    out = run("butterfly", "--help")
    assert out == (DATA / "help_butterfly.txt").read_text()


def test_help_surface_golden():
    # the whole flag surface, every subcommand, pinned byte for byte
    cmds = [
        [], ["farey"], ["farey", "dist"], ["farey", "neighbors"], ["farey", "mediant"],
        ["farey", "cf"], ["farey", "between"],
        ["tree"], ["tree", "show"], ["tree", "dist"],
        ["word"], ["word", "show"], ["word", "dict"], ["word", "complexity"], ["word", "defect"],
        ["spectrum"], ["spectrum", "bands"], ["spectrum", "defects"], ["spectrum", "member"],
        ["analyze"], ["analyze", "lipschitz"], ["analyze", "optimality"], ["analyze", "measures"],
        ["butterfly"],
    ]
    chunks = []
    for cmd in cmds:
        out = run(*cmd, "--help")
        chunks.append("$ kohmoto " + " ".join(cmd + ["--help"]) + "\n" + out)
    assert "\n".join(chunks) == (DATA / "help_surface.txt").read_text()


def test_butterfly_svg_golden(tmp_path):
    target = tmp_path / "fig1.svg"
    run("butterfly", "--Q", "25", "--V", "5", "--fast", "--format", "svg",
        "-o", str(target))
    assert target.read_bytes() == (DATA / "butterfly_q25_v5.svg").read_bytes()


def test_butterfly_threads_do_not_change_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run("butterfly", "--Q", "6", "--V", "5", "--fast", "-o", str(a))
    run("butterfly", "--Q", "6", "--V", "5", "--fast", "--threads", "3", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_analyze_measures_json():
    out = run("analyze", "measures", "--r", "0", "--V", "5", "--kmax", "3", "--format", "json")
    obj = json.loads(out)["result"]
    assert obj["mu"] == ["4/1", "4/1"]
    assert len(obj["rows"]) == 3
