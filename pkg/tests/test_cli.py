import json
import subprocess
import sys

import pytest

from pspec import builtin_algebra, serialize_algebra
from pspec.cli import run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prob_example(capsys):
    code, out, _ = run(capsys, "prob", "--algebra", "builtin:boolean2",
                       "--equation", "(= (meet x0 x1) (zero))")
    assert code == 0 and out == "3/4\n"


def test_spectrum_example(capsys):
    code, out, _ = run(capsys, "spectrum", "--algebra", "builtin:zp:3", "--arity", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["values"] == ["1/3", "1/1"] and data["complete"] is True


def test_prim_example(capsys):
    code, out, _ = run(capsys, "prim", "--algebra", "builtin:z2plus", "--arity", "4")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "5/8" and "WalshHadamard" in lines[1]


def test_algebra_file(tmp_path, capsys):
    path = tmp_path / "b.alg"
    path.write_text(serialize_algebra(builtin_algebra("boolean2")))
    code, out, _ = run(capsys, "prob", "--algebra", str(path), "--equation", "(= (join x0 x1) (one))")
    assert code == 0 and out == "3/4\n"


@pytest.mark.parametrize("argv,expect", [
    (["prob", "--algebra", "builtin:boolean2", "--equation", "(= (meet x0 x1) (zero))"], "probability"),
    (["spectrum", "--algebra", "builtin:boolean2", "--arity", "2"], "values"),
    (["clone", "--algebra", "builtin:nand", "--arity", "2"], "size"),
    (["aut", "--algebra", "builtin:m_n:3", "--arity", "2"], "orbitSizes"),
    (["orbit-bound", "--algebra", "builtin:m_n:3", "--arity", "2"], "values"),
    (["prim", "--algebra", "builtin:v4", "--arity", "1"], "prim"),
    (["nonlinearity", "--table", "0001000100011110"], "nonlinearity"),
    (["post-class", "--algebra", "builtin:bool:or+and"], "classes"),
    (["scan-order2", "--arity", "2"], "rows"),
    (["check", "barrier"], "rows"),
    (["lattice-search"], "lattices"),
])
def test_json_for_every_verb(capsys, argv, expect):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert expect in data
    # identical invocations give identical bytes
    run_command(argv + ["--format", "json"])
    assert capsys.readouterr().out == out


def test_text_outputs(capsys):
    assert run(capsys, "nonlinearity", "--table", "0001000100011110")[1] == "6\n"
    _, out, _ = run(capsys, "aut", "--algebra", "builtin:m_n:3", "--arity", "2")
    assert "|Aut| = 6" in out
    sizes = json.loads(out.splitlines()[-1].split(": ", 1)[1])
    assert sorted(sizes) == [1, 1, 1, 1, 3, 3, 3, 3, 3, 6]
    _, out, _ = run(capsys, "orbit-bound", "--algebra", "builtin:zp:3", "--arity", "1")
    assert out == "0/1 1/3 2/3 1/1\n"
    _, out, _ = run(capsys, "post-class", "--algebra", "builtin:z2plus")
    assert out.splitlines()[-1] == "algebra: A"


def test_csv_output(capsys):
    code, out, _ = run(capsys, "lattice-search", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lattice,probability,covers,target" and len(lines) == 16


def test_lattice_search_text(capsys):
    _, out, _ = run(capsys, "lattice-search")
    assert "1 of 15 lattices realize 13/36" in out
    assert "fl2 (bounded free distributive) 11/36" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["prob", "--algebra", "builtin:boolean2"],
    ["prob", "--equation", "(= x0 x0)"],
    ["prob", "--algebra", "builtin:nope", "--equation", "(= x0 x0)"],
    ["prob", "--algebra", "builtin:boolean2", "--equation", "(= (meet x0) x0)"],
    ["prob", "--algebra", "/nonexistent.alg", "--equation", "(= x0 x0)"],
    ["spectrum", "--algebra", "builtin:boolean2", "--arity", "0"],
    ["check"],
    ["check", "nosuch"],
    ["nonlinearity", "--table", "012"],
    ["nonlinearity", "--table", "011"],
    ["post-class", "--algebra", "builtin:zp:3"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err


def test_budget_exit(capsys):
    code, _, err = run(capsys, "clone", "--algebra", "builtin:nand", "--arity", "3", "--budget", "20")
    assert code == 2 and "budget" in err
    code, _, err = run(capsys, "prim", "--algebra", "builtin:s3", "--arity", "1", "--budget", "100")
    assert code == 2 and "budget" in err
    code, _, _ = run(capsys, "spectrum", "--algebra", "builtin:nand", "--arity", "3", "--budget", "20")
    assert code == 2


def test_check_failure_exit(capsys):
    # the constant-fiber upper half fails on the seeded corpus
    code, out, _ = run(capsys, "check", "hom-lemma")
    assert code == 3 and "FAIL kappa" in out


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "product-law")
    assert code == 0 and out.splitlines()[-1] == "product-law: 20/20 ok"
    code, _, _ = run(capsys, "check", "orbit-inclusion", "--algebra", "builtin:boolean2", "--arity", "2")
    assert code == 0


def test_threads_flag_does_not_change_output(capsys):
    base = ["spectrum", "--algebra", "builtin:m_n:3", "--arity", "2", "--format", "json"]
    _, a, _ = run(capsys, *base)
    _, b, _ = run(capsys, *base, "--threads", "4")
    assert a == b


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "pspec", "prob", "--algebra", "builtin:zp:3",
                        "--equation", "(= (add x0 x1) (e))"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "1/3\n"
