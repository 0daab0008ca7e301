# -*- coding: utf-8 -*-
import json

import pytest

from src.exceptions import ReportError
from src.painleve.resonance import analyze_candidate, classify
from src.report import REFERENCE_GRID, build_report, decay_table, parse_report, serialize
from src.utils import parse_exact, same_order_of_magnitude

from .conftest import q


@pytest.fixture(scope="module")
def hh_report(hh, hh_balances):
    reports = [analyze_candidate(hh, c) for c in hh_balances]
    return build_report(hh, hh_balances, reports, classify(hh, hh_balances, reports))


def test_report_of_the_study_point(hh_report):
    assert hh_report.verdict.status == "FAILS"
    assert [b.label for b in hh_report.balances] == ["x~t^-2, y~t^-2", "x~t^-2, y~t^-2", "x~t^-3/2, y~t^-2"]
    assert hh_report.balances[2].leading == {"x": "ARBITRARY (a1)", "y": "-15/8"}
    assert hh_report.system.parameters == {"lambda": "1/9", "C": "-16/5"}
    roots = {r.value for r in hh_report.resonances[0].roots}
    assert roots == {"-1", "6", "5/2 + 1/10*sqrt(1345)", "5/2 - 1/10*sqrt(1345)"}


def test_json_round_trip(hh_report):
    data = serialize(hh_report, "json")
    assert json.loads(data)["schema"] == "1"
    assert parse_report(data).model_dump() == hh_report.model_dump()


def test_text_report(hh_report):
    text = serialize(hh_report, "TEXT").decode("utf-8")
    assert "verdict: FAILS" in text
    assert "balance x~t^-3/2, y~t^-2: x=ARBITRARY (a1), y=-15/8 [RESOLVED]" in text


def test_branch_series_lead_the_text_report(plus_branch):
    report = build_report(branches=[plus_branch])
    lines = serialize(report, "text").decode("utf-8").splitlines()
    assert lines[0].startswith("z = 25/16*sqrt(2)*t^-3 + 125/192*t^-2 + 25/768*sqrt(2)*t^-1 + 1625/82944 + cz1*t^1")
    assert lines[0].endswith("+ O(t^5)")
    assert lines[1].startswith("y = -15/8*t^-2 + 5/32*sqrt(2)*t^-1 - 205/2304")


def test_branch_model(plus_branch):
    (branch,) = build_report(branches=[plus_branch]).branches
    assert branch.id == "1"
    assert branch.a1 == "25/16*sqrt(2)"
    assert [p.name for p in branch.parameters] == ["cz1", "cy4"]
    assert [c.step for c in branch.constraints] == [4, 6]
    (residual,) = [c for c in branch.checks if c.name == "residual"]
    assert residual.passed


def test_balances_without_resonances_get_a_placeholder(hh, hh_balances):
    report = build_report(hh, hh_balances)
    assert len(report.resonances) == 3
    assert all(r.determinant == "" for r in report.resonances)


def test_unknown_format(hh_report):
    with pytest.raises(ReportError):
        serialize(hh_report, "yaml")


def test_decay_table_needs_two_parameters():
    from src.odemodel import parse_system
    from src.painleve.balance import find_balances
    from src.painleve.series import expand

    system = parse_system("vars u;\nu'' = 6*u^2;")
    (branch,) = expand(system, find_balances(system)[0], 6)
    with pytest.raises(ReportError):
        decay_table(branch, [(0, 0)], workers=1)


ACCEPTANCE_ROWS = [row for row in REFERENCE_GRID if (row[0], row[1]) in {
    ("0", "0"), ("-1", "-1"), ("0.4", "0.8"), ("20", "20"), ("40", "40"),
}]


@pytest.mark.slow
@pytest.mark.parametrize("cz1, cy4, printed_z, printed_y", ACCEPTANCE_ROWS)
def test_decay_table_rows(plus_branch, cz1, cy4, printed_z, printed_y):
    (row,) = decay_table(plus_branch, [(parse_exact(cz1), parse_exact(cy4))], workers=1)
    assert row.cz1 == str(q(cz1)) and row.cy4 == str(q(cy4))
    assert same_order_of_magnitude(abs(parse_exact(row.cz50).to_bigfloat(60)), printed_z.lstrip("-"))
    assert same_order_of_magnitude(abs(parse_exact(row.cy50).to_bigfloat(60)), printed_y.lstrip("-"))
