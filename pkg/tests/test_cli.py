import csv
import logging

import pytest

from conftest import LOWER_BOUND_SCRIPT
from src.main import build_parser, main
from src.utils.logger import HANDLER_NAME, logger, setup_logger


@pytest.fixture(autouse=True)
def detach_cli_handler():
    yield
    for handler in list(logger.handlers):
        if handler.get_name() == HANDLER_NAME:
            logger.removeHandler(handler)


@pytest.fixture
def lower_bound_file(tmp_path):
    path = tmp_path / "lower_bound.smt2"
    path.write_text(LOWER_BOUND_SCRIPT)
    return str(path)


@pytest.mark.parametrize("engine", ["ofp-bs", "omt-lin", "omt-bin"])
def test_solve_prints_the_objective(capsys, lower_bound_file, engine):
    assert main(["solve", lower_bound_file, "--engine", engine, "-q"]) == 0
    assert capsys.readouterr().out.splitlines() == ["sat", "(objectives (cost 29/2))"]


def test_solve_with_stats_and_hints(capsys, lower_bound_file):
    assert main(["solve", lower_bound_file, "--pi", "--bp", "--so", "--stats", "-q"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "sat"
    assert lines[1].startswith("smt_calls=")
    assert lines[2] == "(objectives (cost 29/2))"


def test_solve_dumps_cnf(tmp_path, lower_bound_file):
    dump = tmp_path / "lower_bound.cnf"
    assert main(["solve", lower_bound_file, "--dump-cnf", str(dump), "-q"]) == 0
    assert "p cnf" in dump.read_text()


@pytest.mark.parametrize("text, fragment", [
    ("(declare-const x (_ BitVec 4)", "1:1"),
    ("(declare-const x (_ FP 3 5)) (assert (fp.isNaN (fp.add RNE x x)))", "fp.add"),
])
def test_user_errors_print_an_smtlib_error(capsys, tmp_path, text, fragment):
    path = tmp_path / "bad.smt2"
    path.write_text(text)
    assert main(["solve", str(path), "-q"]) == 1
    out = capsys.readouterr().out
    assert out.startswith('(error "')
    assert fragment in out


@pytest.mark.parametrize("data, fragment", [
    (b"(set-logic QF_BV)\n(echo \"\xff\")\n", "2:8"),
    (b"(set-option (produce-models) true)", "1:13"),
])
def test_malformed_bytes_exit_with_a_located_error(capsys, tmp_path, data, fragment):
    path = tmp_path / "bad.smt2"
    path.write_bytes(data)
    assert main(["solve", str(path), "-q"]) == 1
    out = capsys.readouterr().out
    assert out.startswith('(error "')
    assert fragment in out


def test_setup_logger_levels_and_single_handler():
    assert setup_logger(verbose=True).level == logging.DEBUG
    assert setup_logger(quiet=True).level == logging.WARNING
    log = setup_logger()
    assert log.level == logging.INFO
    assert [h.get_name() for h in log.handlers].count(HANDLER_NAME) == 1


def test_verbose_solve_logs_debug_to_stderr(capsys, lower_bound_file):
    assert main(["solve", lower_bound_file, "-v"]) == 0
    captured = capsys.readouterr()
    assert "[DEBUG] omtbits" in captured.err
    assert "DEBUG" not in captured.out


def test_missing_file(capsys, tmp_path):
    assert main(["solve", str(tmp_path / "nope.smt2"), "-q"]) == 1
    assert "cannot read" in capsys.readouterr().out


def test_so_alone_is_a_user_error(capsys, lower_bound_file):
    assert main(["solve", lower_bound_file, "--so", "-q"]) == 1
    assert capsys.readouterr().out.startswith('(error "')


@pytest.mark.parametrize("argv", [
    [],
    ["solve"],
    ["solve", "x.smt2", "--engine", "simplex"],
    ["solve", "x.smt2", "--timeout", "0"],
    ["gen", "--out", "somewhere"],
])
def test_bad_arguments_exit_through_argparse(argv):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(argv)
    assert info.value.code == 2


def test_gen_writes_instances(tmp_path):
    out = tmp_path / "instances"
    assert main(["gen", "--seed", "7", "--sort", "(2 3)", "--count", "4", "--profile", "fp",
                 "--out", str(out), "-q"]) == 0
    assert sorted(p.name for p in out.iterdir()) == [f"fp_s7_{i:04d}.smt2" for i in range(4)]


def test_bench_writes_csv_and_summary(tmp_path):
    instances = tmp_path / "instances"
    out = tmp_path / "results" / "runs.csv"
    argv = ["bench", "--dir", str(instances), "--seed", "2", "--count", "2", "--sort", "(2 3)",
            "--configs", "ofp-bs,omt-bin", "--out", str(out), "-q"]
    assert main(argv) == 0
    with open(out, newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4
    assert {r["engine"] for r in rows} == {"ofp-bs", "omt-bin"}
    summary = (tmp_path / "results" / "runs_summary.md").read_text()
    assert "| ofp-bs |" in summary


def test_bench_on_missing_directory(capsys, tmp_path):
    assert main(["bench", "--dir", str(tmp_path / "none"), "-q"]) == 1
    assert "neither a file nor a directory" in capsys.readouterr().out
