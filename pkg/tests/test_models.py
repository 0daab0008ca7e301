# -*- coding: utf-8 -*-
import pytest
from pydantic import ValidationError

from src.models import AnalysisReport, CaseModel, RunConfig


def test_params_switch_the_mode_to_evaluated():
    config = RunConfig(command="series", params="cz1=0, cy4=0.4")
    assert config.mode == "EVALUATED"
    assert config.params == {"cz1": "0", "cy4": "2/5"}
    assert config.builtin == "hh"


def test_explicit_mode_wins():
    config = RunConfig(command="series", params="cz1=0", mode="SYMBOLIC")
    assert config.mode == "SYMBOLIC"
    assert RunConfig(command="series").mode == "SYMBOLIC"


def test_lambda_alias_and_defaults():
    config = RunConfig(**{"command": "test", "lambda": "1/16", "C": "-16"})
    assert (config.lam, config.C) == ("1/16", "-16")
    assert RunConfig(command="test").lam == "1/9"
    assert RunConfig(command="cases").builtin is None
    assert RunConfig(command="balance", file="system.txt").builtin is None


@pytest.mark.parametrize("data", [
    {"command": "test", "lambda": "one"},
    {"command": "test", "C": "1/0"},
    {"command": "series", "params": "cz1"},
    {"command": "series", "order": 0},
    {"command": "series", "precision": 16},
    {"command": "draw"},
])
def test_invalid_options(data):
    with pytest.raises((ValidationError, ValueError)):
        RunConfig(**data)


def test_report_schema_alias():
    dumped = AnalysisReport().model_dump(by_alias=True)
    assert dumped["schema"] == "1"
    case = CaseModel(label="KdV", lam="1", C="-6", expected="PASSES", verdict="PASSES", agrees=True)
    assert case.model_dump(by_alias=True)["lambda"] == "1"
