import json

from src.core.schemas import ErrorReport, GameReport, MembershipReport, SolutionReport


def test_render_ends_with_newline():
    report = MembershipReport(verb="member", automaton="B", state="p", tree="f(a,a)", member=True)
    assert report.render() == "f(a,a): member of B @ p\n"


def test_error_report_names_the_stage():
    report = ErrorReport(verb="solve", kind="ResourceBudgetExceeded", message="too big", stage="ata-to-nta")
    assert report.lines() == ["error: ResourceBudgetExceeded in stage ata-to-nta: too big"]


def test_check_report_prints_only_the_decision():
    assert SolutionReport(verb="check", decision=False).lines() == ["decision no"]


def test_reports_dump_to_json():
    report = GameReport(verb="game", prover=["v"], spoiler=[], strategy={"v": "v"}, verified=True)
    data = json.loads(report.model_dump_json())
    assert data["prover"] == ["v"]
    assert data["dot"] is None
