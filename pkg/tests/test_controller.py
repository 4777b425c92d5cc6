"""
Tests for run configuration, suite dispatch and the command-line exit codes
"""
import json
import sys
sys.path.append(".")

import pytest
from pydantic import ValidationError

from hecke_w import main
from src.algebra.schemas import CaseStatus, SuiteReport
from src.controller.schemas import Command, OutputFormat, RunConfig
from src.controller.suite_controller import SuiteController, exit_code, persist, render


def test_run_config_defaults():
    cfg = RunConfig(command="check-relations", suite="Q0", instance="p2")
    assert cfg.command == Command.RELATIONS
    assert cfg.format == OutputFormat.TEXT
    assert cfg.jobs >= 1
    assert cfg.r == "1" and cfg.chi == "0"


@pytest.mark.parametrize(
    "values",
    [
        {"command": "check-relations", "suite": "Q0", "instance": "nope"},
        {"command": "check-relations", "suite": "Q9", "instance": "p2"},
        {"command": "check-relations", "suite": "Q0"},
        {"command": "check-relations", "suite": "Q0", "instance": "p2", "max_degree": 0},
        {"command": "check-w", "suite": "lehn", "instance": "curve:g=0,e=1", "jobs": -1},
        {"command": "degenerate", "suite": "weyl", "instance": "curve:g=0,e=1", "r": "0"},
        {"command": "degenerate", "suite": "weyl", "instance": "curve:g=0,e=1", "chi": "x"},
        {"command": "h2", "suite": "bracket", "operands": ["V(1,1)"]},
        {"command": "h2", "suite": "bracket", "operands": ["V(1,1)", "W(2)"]},
        {"command": "lefschetz", "suite": "verify"},
        {"command": "lefschetz", "suite": "random", "seed": -1},
    ],
)
def test_run_config_rejects(values):
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_h2_bracket_dispatch():
    cfg = RunConfig(command="h2", suite="bracket", operands=["V(2,3)", "V(1,1)"])
    report = SuiteController().run(cfg)
    assert report.extra["result"] == "V(2,3)"
    assert render(report, OutputFormat.TEXT) == "V(2,3)"
    assert exit_code(report) == 0


def test_exit_codes():
    report = SuiteReport(suite="demo", instance="none")
    report.add("a", CaseStatus.OK)
    report.add("b", CaseStatus.SKIP, "window")
    assert exit_code(report) == 0
    report.add("c", CaseStatus.ERROR, "boom")
    assert exit_code(report) == 1


def test_render_json_schema():
    cfg = RunConfig(command="h2", suite="verify", index_cap=2, degree_cap=2)
    payload = json.loads(render(SuiteController().run(cfg), OutputFormat.JSON))
    assert {"suite", "instance", "cases", "summary"} <= set(payload)
    assert all(set(case) == {"id", "status", "detail"} for case in payload["cases"])


def test_persist_writes_only_when_configured(tmp_path, monkeypatch):
    cfg = RunConfig(command="h2", suite="bracket", operands=["V(1,0)", "V(0,1)"])
    report = SuiteController().run(cfg)
    monkeypatch.delenv("HECKE_REPORT_DIR", raising=False)
    assert persist(report, cfg) == ""
    monkeypatch.setenv("HECKE_REPORT_DIR", str(tmp_path))
    path = persist(report, cfg)
    assert path.endswith("h2-bracket-plane.json")
    assert json.loads(open(path, encoding="utf-8").read())["suite"] == "h2-bracket"


def test_main_h2_bracket(capsys):
    assert main(["h2", "bracket", "V(2,3)", "V(1,1)"]) == 0
    assert capsys.readouterr().out == "V(2,3)\n"


def test_main_unknown_instance_is_a_config_error(capsys):
    assert main(["check-relations", "--instance", "nope", "--relation", "Q0"]) == 2
    assert capsys.readouterr().out == ""


def test_main_relations_small_bounds(capsys):
    code = main(["check-relations", "--instance", "p2", "--relation", "Q0", "--max-degree", "2", "--max-index", "1", "--max-length", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("0 errors")


def test_main_degenerate_structured(capsys):
    code = main(["degenerate", "--suite", "parabolic", "--instance", "curve:g=0,e=1", "--window", "2", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cases"][0]["status"] == "SKIP"


@pytest.mark.parametrize("command", ["check-relations", "check-w"])
def test_help_states_the_length_cap(command, capsys):
    with pytest.raises(SystemExit) as exit_info:
        main([command, "--help"])
    assert exit_info.value.code == 0
    out = " ".join(capsys.readouterr().out.split())
    assert "Generators per test monomial (default 2)" in out
    assert "Not raised with" in out and "unless this is raised too" in out
