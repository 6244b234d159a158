import json

import pytest

import config
from cli import EXIT_INPUT, EXIT_OK, build_parser, run
from polynomial import parse_system
from report import load_result


@pytest.fixture
def plane_and_line(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text("vars: x, y, z;\nx*z;\ny*z;\n")
    return path


def test_gen_minors_sizes(tmp_path):
    out = tmp_path / "minors.txt"
    assert run(["gen", "minors", "--rows", "2", "--cols", "9", "-o", str(out)]) == EXIT_OK
    system = parse_system(out.read_text())
    assert len(system) == 8
    assert system.n_vars == 18


def test_gen_eigen_sizes(tmp_path):
    out = tmp_path / "eigen.txt"
    assert run(["gen", "eigen", "--size", "6", "-o", str(out)]) == EXIT_OK
    system = parse_system(out.read_text())
    assert len(system) == 6
    assert system.n_vars == 7
    assert run(["gen", "eigen", "--size", "6", "--hyperplane", "-o", str(out)]) == EXIT_OK
    assert len(parse_system(out.read_text())) == 7


def test_gen_to_stdout(capsys):
    assert run(["gen", "illustrative"]) == EXIT_OK
    assert "vars: x, y, z;" in capsys.readouterr().out


def test_gen_rejects_bad_size(capsys):
    assert run(["gen", "minors", "--rows", "1"]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("eqbyeq: error[input]:")


def test_solve_writes_json(plane_and_line, tmp_path):
    out = tmp_path / "result.json"
    assert run(["-q", "solve", str(plane_and_line), "--json", str(out)]) == EXIT_OK
    stored = load_result(str(out))
    assert stored.counts() == {1: 1, 2: 1}
    assert stored.n_vars == 3
    assert stored.mode == "all"
    assert not stored.incomplete
    assert all("wall_time" not in s for s in stored.stages)


def test_solve_json_is_reproducible(plane_and_line, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    run(["-q", "solve", str(plane_and_line), "--seed", "7", "--json", str(first)])
    run(["-q", "solve", str(plane_and_line), "--seed", "7", "--json", str(second)])
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["seed"] == 7


def test_solve_report_to_stdout(plane_and_line, capsys):
    assert run(["-q", "solve", str(plane_and_line)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "hypersurface witness counts: 2 2" in out
    assert "stage" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: x, y;\nx + w;\n")
    assert run(["solve", str(bad)]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("eqbyeq: error[input]:")


def test_missing_file_exit_code(tmp_path, capsys):
    assert run(["solve", str(tmp_path / "missing.txt")]) == EXIT_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_bad_tolerance_exit_code(plane_and_line):
    assert run(["solve", str(plane_and_line), "--tol-dup", "-1"]) == EXIT_INPUT


def test_bad_environment_mode_is_an_input_error(plane_and_line, monkeypatch, capsys):
    monkeypatch.setattr(config, "MODE", "sometimes")
    assert run(["solve", str(plane_and_line)]) == EXIT_INPUT
    assert "EQBYEQ_MODE" in capsys.readouterr().err


def test_ignore_file(plane_and_line, tmp_path):
    Q = tmp_path / "q.txt"
    Q.write_text("vars: x, y, z;\nz;\n")
    out = tmp_path / "r.json"
    assert run(["-q", "solve", str(plane_and_line), "--ignore", str(Q), "--json", str(out)]) == EXIT_OK
    assert load_result(str(out)).counts() == {1: 0, 2: 1}


def test_total_degree_method(tmp_path, capsys):
    square = tmp_path / "square.txt"
    square.write_text("vars: x, y;\nx^2 + y^2 - 4;\nx*y - 1;\n")
    assert run(["-q", "solve", str(square), "--method", "total-degree"]) == EXIT_OK
    assert "nonsingular solutions: 4" in capsys.readouterr().out


def test_parser_defaults():
    args = build_parser().parse_args(["solve", "in.txt"])
    assert args.method == "eqbyeq"
    assert args.json is None
