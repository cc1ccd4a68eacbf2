from __future__ import annotations

import json

import pytest

from trilie.cli import main
from trilie.fileformat import EXAMPLE_FILE


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example.tl"
    p.write_text(EXAMPLE_FILE)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_crossed_adjoint(capsys, example_file):
    code, out, _ = run(capsys, "check-crossed", example_file, "--map", "H", "--action", "adjoint")
    assert code == 0
    assert "crossed-homomorphism: valid" in out


def test_check_crossed_identity_is_invalid(capsys, example_file):
    code, out, _ = run(capsys, "check-crossed", example_file, "--map", "Id", "--action", "ad", "--format", "json")
    assert code == 1
    report = json.loads(out)
    (verdict,) = report["verdicts"]
    assert verdict["valid"] is False
    assert verdict["violations"] == [{"args": [2, 3, 4], "residual": "-3*e1"}]


def test_cohomology_table(capsys, example_file):
    code, out, _ = run(capsys, "cohomology", example_file, "--map", "H", "--action", "adjoint",
                       "--max-degree", "3", "--format", "json")
    assert code == 0
    table = json.loads(out)["table"]
    assert [row["cochains"] for row in table] == [6, 16, 16]
    assert [row["cohomology"] for row in table] == [3, 9, 10]


@pytest.mark.parametrize("argv,expected", [
    (["check-algebra"], 0),
    (["check-representation", "--action", "adjoint"], 0),
    (["check-action", "--action", "ad"], 0),
    (["check-rb", "--map", "Id", "--action", "ad", "--weight", "1/2"], 1),
    (["semidirect", "--action", "ad"], 0),
    (["mc-check", "--map", "H", "--action", "ad"], 0),
    (["mc-check", "--map", "Id", "--action", "ad"], 1),
    (["twisted-mc-check", "--map", "H", "--perturbation", "H", "--action", "ad"], 1),
    (["deform-check", "--map", "H", "--direction", "Id", "--action", "ad"], 1),
    (["deform-class", "--map", "H", "--direction", "Id", "--action", "ad"], 1),
])
def test_subcommand_exit_codes(capsys, example_file, argv, expected):
    code, out, _ = run(capsys, argv[0], example_file, *argv[1:])
    assert code == expected
    assert out.startswith("command: ")


def test_equivalence_with_solver(capsys, tmp_path):
    text = EXAMPLE_FILE + "\nmap Z from g4 to g4\nend\n"
    p = tmp_path / "f.tl"
    p.write_text(text)
    code, out, _ = run(capsys, "equivalence", str(p), "--map", "H", "--direction", "Z", "--other", "Z",
                       "--action", "ad", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["witness_found"] is True


def test_usage_and_parse_errors(capsys, example_file, tmp_path):
    assert run(capsys, "check-crossed", example_file, "--map", "nope", "--action", "ad")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    bad = tmp_path / "bad.tl"
    bad.write_text("algebra g\ndim 4\nbracket 3 2 4 = e1\nend\n")
    code, _, err = run(capsys, "check-algebra", str(bad))
    assert code == 2
    assert "line 3" in err


def test_precondition_error_exit_code(capsys, example_file):
    code, _, err = run(capsys, "cohomology", example_file, "--map", "Id", "--action", "ad")
    assert code == 2
    assert "crossed" in err


def test_reports_are_deterministic(capsys, example_file):
    argv = ["deform-check", example_file, "--map", "H", "--direction", "Id", "--action", "ad", "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_timing_only_on_request(capsys, example_file):
    plain = json.loads(run(capsys, "check-algebra", example_file, "--format", "json")[1])
    timed = json.loads(run(capsys, "check-algebra", example_file, "--format", "json", "--timing")[1])
    assert "wall_clock_s" not in plain
    assert "wall_clock_s" in timed


def test_verify_theorems(capsys):
    argv = ["verify-theorems", "--seed", "42", "--trials", "20", "--format", "json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["seed"] == 42
    assert all(v["valid"] for v in report["verdicts"])
    assert len(report["verdicts"]) >= 20
