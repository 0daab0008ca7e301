# -*- coding: utf-8 -*-
import pytest

from src.cli import EXIT_ANALYSIS_FAILURE, EXIT_OK, EXIT_USAGE, default_candidates, run
from src.report import parse_report


def _run_json(capsysbinary, argv):
    code = run(argv + ["--format", "json"])
    out = capsysbinary.readouterr().out
    return code, parse_report(out) if out else None


@pytest.fixture
def system_file(tmp_path):
    def write(text):
        path = tmp_path / "system.txt"
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_test_command_reports_the_verdict(capsysbinary):
    code, report = _run_json(capsysbinary, ["test"])
    assert code == EXIT_OK
    assert report.verdict.status == "FAILS"
    assert len(report.resonances) == 3


def test_balance_command_on_a_file(capsysbinary, system_file):
    code, report = _run_json(capsysbinary, ["balance", "--file", system_file("vars u;\nu'' = 6*u^2;\n")])
    assert code == EXIT_OK
    assert [b.label for b in report.balances] == ["u~t^-2"]


def test_series_command_on_the_squared_system(capsysbinary):
    code, report = _run_json(capsysbinary, ["series", "--builtin", "hh-z", "--order", "7"])
    assert code == EXIT_OK
    first = report.branches[0]
    assert first.a1 == "25/16*sqrt(2)"
    assert [p.name for p in first.parameters] == ["cz1", "cy4"]
    assert first.checks[0].name == "residual" and first.checks[0].passed


def test_series_text_output(capsysbinary):
    code = run(["series", "--builtin", "hh-z", "--order", "6"])
    text = capsysbinary.readouterr().out.decode("utf-8")
    assert code == EXIT_OK
    assert "z = 25/16*sqrt(2)*t^-3 + 125/192*t^-2" in text
    assert "[branch 1: OK, a1 = 25/16*sqrt(2), free cz1, cy4]" in text


def test_series_exit_code_when_logarithms_are_needed(capsysbinary, system_file):
    path = system_file("vars u;\nu'' = 6*u^2 + 5*u';\n")
    code, report = _run_json(capsysbinary, ["series", "--file", path, "--order", "6"])
    assert code == EXIT_ANALYSIS_FAILURE
    assert report.branches[0].status == "LOG_REQUIRED"


@pytest.mark.parametrize("argv", [
    ["nosuch"],
    ["test", "--lambda", "abc"],
    ["series", "--params", "cz1"],
    ["series", "--builtin", "hh-z", "--params", "cq9=1"],
    ["series", "--builtin", "hh-z", "--order", "5"],
    ["balance", "--file", "/nonexistent/system.txt"],
    ["verify", "--C", "1"],
    ["test", "--builtin", "hh", "--file", "x.txt"],
    ["series", "--builtin", "hh-z", "--precision", "64"],
    ["table", "--builtin", "hh-z", "--precision", "64"],
    ["resonances", "--precision", "16"],
])
def test_usage_errors(capsysbinary, argv):
    assert run(argv) == EXIT_USAGE


def test_syntax_errors_are_usage_errors(capsysbinary, system_file):
    assert run(["test", "--file", system_file("vars x;\nx'' = 1/x;\n")]) == EXIT_USAGE


def test_default_candidates(hh_balances, z_balances, case2):
    assert default_candidates(z_balances) == [case2]
    assert [c.label() for c in default_candidates(hh_balances)] == ["x~t^-2, y~t^-2", "x~t^-2, y~t^-2"]


def test_verify_command(capsysbinary):
    code, report = _run_json(capsysbinary, ["verify", "--order", "20"])
    assert code == EXIT_OK
    assert [b.id for b in report.branches] == ["1+", "1-"]
    assert [b.order for b in report.branches] == [23, 23]
    for branch in report.branches:
        names = [c.name for c in branch.checks]
        assert "closed form" in names and "trajectory relation" in names
        assert all(c.passed for c in branch.checks)


@pytest.mark.slow
def test_cases_command(capsysbinary):
    code, report = _run_json(capsysbinary, ["cases"])
    assert code == EXIT_OK
    assert all(case.agrees for case in report.cases)
    assert report.cases[-1].verdict == "FAILS"


@pytest.mark.slow
def test_table_command(capsysbinary):
    code, report = _run_json(capsysbinary, ["table", "--builtin", "hh-z", "--grid", "0:0"])
    assert code == EXIT_OK
    (row,) = report.decay_table
    assert (row.cz1, row.cy4) == ("0", "0")
    assert row.printed_cz50 is None


def test_precision_option_on_the_resonances_command(capsysbinary):
    code, report = _run_json(capsysbinary, ["resonances", "--builtin", "hh-z", "--precision", "40"])
    assert code == EXIT_OK
    assert report.resonances


@pytest.mark.slow
def test_verify_command_at_the_default_order(capsysbinary, monkeypatch):
    monkeypatch.delenv("PAINLEVE_EVALUATED_ORDER", raising=False)
    code, report = _run_json(capsysbinary, ["verify"])
    assert code == EXIT_OK
    for branch in report.branches:
        # t^50 of z needs 53 steps
        assert branch.order == 53
        closed_form = next(c for c in branch.checks if c.name == "closed form")
        assert closed_form.passed
