import json

import pytest

from diffalg.cli import main


@pytest.fixture
def sysfile(tmp_path):
    def write(text, name="sys.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_jacobi(sysfile, capsys):
    f = sysfile("vars: x, y, z\nx^(100) + y' + z'\nx^(50) + y + z\nx' + y' + 1\n")
    assert main(["jacobi", f]) == 0
    assert capsys.readouterr().out.strip() == "J(weak)=101 J(strong)=101"


def test_jacobi_json(sysfile, capsys):
    f = sysfile("vars: x, y\nx' + y^(18)\n(y')^2 + y\n")
    assert main(["jacobi", f, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["J_weak"] == 18 and data["J_strong"] == 2
    assert data["witnesses_weak"] == [[1, 0]]


def test_matrix_grid(sysfile, capsys):
    f = sysfile("vars: x, y\nx' + y^(18)\n(y')^2 + y\n")
    assert main(["matrix", f]) == 0
    assert capsys.readouterr().out == " 1 18\n ·  1\n"
    assert main(["matrix", f, "--convention", "weak", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["entries"] == [[1, 18], [0, 1]] and data["cols"] == ["x", "y"]


def test_vars_override(sysfile, capsys):
    f = sysfile("x' + y^(18)\n(y')^2 + y\n")
    assert main(["matrix", f, "--vars", "y,x", "--convention", "weak", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["entries"] == [[18, 1], [1, 0]]


def test_trace(sysfile, capsys):
    f = sysfile("vars: x, y, z\nx^(100) + y' + z'\nx^(50) + y + z\nx' + y' + 1\n")
    assert main(["trace", f, "--script", "0/2@x;1/2@x"]) == 0
    assert capsys.readouterr().out.strip() == "J-sequence: 101,150,101"


def test_divide(sysfile, capsys):
    f = sysfile("vars: x\nx''\nx' - x\n")
    assert main(["divide", f, "--dividend", "0", "--divisor", "1", "--var", "x", "--mode", "full", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["remainder"] == "x" and data["s"] == "1" and data["mode"] == "full"
    assert data["quotients"] == [[[1, "1"], [0, "1"]]]


def test_autoreduce_and_dims(sysfile, capsys):
    f = sysfile("vars: x, y\nx' - x\ny' - x\n")
    assert main(["autoreduce", f, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["charset"] == ["x' - x", "y' - x"] and data["converged"]
    assert main(["dims", f]) == 0
    assert capsys.readouterr().out.strip() == "diffDim=0 absDimBound=2"


def test_autoreduce_inconsistent_reported(sysfile, capsys):
    f = sysfile("vars: x\nx' - x\nx' - x - 1\n")
    assert main(["autoreduce", f, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["inconsistent"] is True


def test_forms(sysfile, capsys):
    f = sysfile("vars: x, y\nx' - x\nx'' - y\n")
    assert main(["forms", f]) == 0
    assert "first=True" in capsys.readouterr().out
    f2 = sysfile("vars: x, y\nx^(4) + y'''\nx'' + y'\n", "f2.txt")
    assert main(["forms", f2, "--to", "first", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["form"] == "first"


def test_reduce_linear(sysfile, capsys):
    f = sysfile("vars: x, y\nx'' - x\ny' - x\n")
    assert main(["reduce-linear", f, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["diff_dim"] == 0 and data["abs_dim_bound"] == 3


def test_pencil(sysfile, capsys):
    f = sysfile("vars: x, y\nx'^2 - x\ny' - x\n")
    assert main(["pencil", f, "--pivot", "0", "--var", "x", "--fibers", "0,1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["separant"] == "2*x'" and data["degree"] == 2
    assert data["fibers"]["0"][0] == data["coseparant"]


def test_examples_passes():
    assert main(["examples"]) == 0


def test_error_paths(sysfile, capsys):
    f = sysfile("")
    assert main(["jacobi", f]) == 1
    f2 = sysfile("vars: x\nx' +* 2\n", "bad.txt")
    assert main(["jacobi", f2]) == 1
    assert main(["jacobi", "/no/such/file"]) == 1
    f3 = sysfile("vars: x, y\nx^(4) + y'''\nx'' + y'\n", "f3.txt")
    assert main(["forms", f3, "--to", "second"]) == 1  # hypothesis failure
    capsys.readouterr()


def test_error_json(sysfile, capsys):
    f = sysfile("vars: x\n(x'\n")
    assert main(["jacobi", f, "--json"]) == 1
    err = capsys.readouterr().err
    assert json.loads(err)["kind"] == "ParseError"
