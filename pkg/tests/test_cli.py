import json

import pytest

from ehall import __version__
from ehall.cli import main, parse_expression, parse_partition, UsageError, EXIT_OK, EXIT_FAILED, EXIT_USAGE
from ehall.report import Report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_examples(capsys):
    code, out, _ = run(capsys, "expand", "[1]")
    assert code == EXIT_OK
    assert json.loads(out)["text"] == "p1"
    assert json.loads(run(capsys, "expand", "[]")[1])["text"] == "1"
    doc = json.loads(run(capsys, "expand", "[2]")[1])
    assert doc["power_sum"] == [[[2], "(-q + 1)/2"], [[1, 1], "(q + 1)/2"]]
    assert doc["monomial"] == [[[2], "1"], [[1, 1], "q + 1"]]
    assert doc["version"] == __version__


@pytest.mark.parametrize("expr,degree,entries", [
    ("f0(1)", 2, [["q + 1", "0"], ["0", "t + 1"]]),
    ("nabla", 2, [["q", "0"], ["0", "t"]]),
    ("[f-(0),f+(-1)]", 2, [["1/(q*t - q - t + 1)", "0"], ["0", "1/(q*t - q - t + 1)"]]),
    ("2*f0(1) - f0(1)*1", 1, [["1"]]),
    ("(q+1)*f0(1)-2", 1, [["q - 1"]]),
    ("f0(1)", 1, [["1"]]),
])
def test_matrix(capsys, expr, degree, entries):
    code, out, _ = run(capsys, "matrix", expr, str(degree))
    assert code == EXIT_OK
    assert json.loads(out)["matrix"]["entries"] == entries


def test_matrix_gamma_zero_degree_three(capsys):
    doc = json.loads(run(capsys, "matrix", "[f-(0),f+(-1)]", "3")[1])
    m = doc["matrix"]["entries"]
    assert all(m[i][j] == ("1/(q*t - q - t + 1)" if i == j else "0") for i in range(3) for j in range(3))


def test_matrix_rank_two(capsys):
    doc = json.loads(run(capsys, "matrix", "f0(1)", "1", "--rank", "2")[1])
    assert doc["matrix"]["row_basis"] == [[[1], []], [[], [1]]]
    assert doc["matrix"]["entries"] == [["e1^-1", "0"], ["0", "e2^-1"]]


@pytest.mark.parametrize("argv", [
    ["verify", "no-such-suite"],
    ["matrix", "f0(", "1"],
    ["matrix", "h(0,0)", "1"],
    ["matrix", "f+(0)+f0(1)", "1"],
    ["matrix", "casimir(0,2)", "3"],
    ["matrix", "nabla", "1", "--rank", "2"],
    ["matrix", "f0(1)", "-1"],
    ["expand", "[1,2]"],
    ["expand", "[1,"],
    ["verify", "pieri", "--degree", "-1"],
    [],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert "error" in err


def test_parse_errors_report_position():
    with pytest.raises(UsageError, match="position 5"):
        parse_expression("h(1,0")
    with pytest.raises(UsageError):
        parse_partition("[0]")


def test_verify_pass_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "characters", "--size", "3", "--out", str(a)]) == EXIT_OK
    assert main(["verify", "characters", "--size", "3", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["status"] == "pass"
    assert doc["config"] == {"seed": 0, "size": 3, "suite": "characters"}
    assert doc["version"] == __version__


def test_verify_gt_identities(capsys):
    code, out, _ = run(capsys, "verify", "gt-identities", "--size", "4", "--trials", "10", "--seed", "7")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["config"]["seed"] == 7
    assert [r["relation"] for r in doc["reports"]] == ["garsia-tesler", "kop", "vert8", "partial-fractions"]


def test_verify_relations_small(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--range", "1", "--degree", "3")
    assert code == EXIT_OK


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "rank-r", "--rank", "2", "--range", "1", "--degree", "2", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "relation,identity,params,status,witness"
    assert all(",pass," in line for line in lines[1:])


def test_verification_failure_exit_code(capsys, monkeypatch):
    import ehall.cli as cli

    def failing(name, args):
        rep = Report("forced", {}, 0)
        rep.add("identity", {}, False, {"why": "forced"})
        return {}, [rep]

    monkeypatch.setattr(cli, "_suite_reports", failing)
    code, out, _ = run(capsys, "verify", "pieri")
    assert code == EXIT_FAILED
    assert json.loads(out)["reports"][0]["witness"]["difference"] == {"why": "forced"}
