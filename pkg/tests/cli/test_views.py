import json

import pytest
from click.testing import CliRunner

from src.core.errors import ResourceBudgetExceeded
from src.core.schemas import SolutionReport
from src.main import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


def test_help_lists_the_verbs(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for verb in ["member", "inverse-image", "solve-nonempty", "word-solve", "eval-oi", "game"]:
        assert verb in result.output


@pytest.mark.parametrize(
    "tree, code, text",
    [
        ("t", 1, "f(a,b): not a member of A @ p\n"),
        ("comb", 0, "n0 = f(n0, n1); n1 = a; root n0: member of A @ p\n"),
    ],
)
def test_member(runner, document_path, tree, code, text):
    result = runner.invoke(cli, ["member", str(document_path), "-a", "A", "-q", "p", "-t", tree])
    assert result.exit_code == code
    assert result.stdout == text


def test_empty_as_json(runner, document_path):
    result = runner.invoke(cli, ["empty", str(document_path), "-a", "A", "-q", "p", "--json"])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["verb"] == "empty"
    assert report["empty"] is False
    assert report["witness"]


def test_eval_io(runner, document_path):
    result = runner.invoke(cli, ["eval-io", str(document_path), "-s", "two", "-t", "s"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "4 io images of f(x,x)"


def test_check(runner, document_path):
    result = runner.invoke(cli, ["check", str(document_path), "-s", "two"])
    assert result.exit_code == 1
    assert result.stdout == "decision no\n"


def test_game_with_dot(runner, document_path, tmp_path):
    dot = tmp_path / "game.dot"
    result = runner.invoke(cli, ["game", str(document_path), "--arena", "G", "--dot", str(dot)])
    assert result.exit_code == 0
    assert result.stdout.startswith("prover v0\nspoiler v1\n")
    assert dot.read_text(encoding="utf-8").startswith("digraph arena {")


def test_undefined_name(runner, document_path):
    result = runner.invoke(cli, ["member", str(document_path), "-a", "B", "-q", "p", "-t", "t"])
    assert result.exit_code == 2
    assert "error: DocumentSemanticError: automaton 'B' is not defined" in result.stderr
    assert result.stdout == ""


def test_syntax_error_as_json(runner, tmp_path):
    path = tmp_path / "broken.tm"
    path.write_text("alphabet\n  f 2\nend\n  tree\n", encoding="utf-8")
    result = runner.invoke(cli, ["solve", str(path), "--json"])
    assert result.exit_code == 2
    report = json.loads(result.stdout)
    assert report["kind"] == "DocumentSyntaxError"
    assert (report["line"], report["column"]) == (4, 3)


def test_budget_error(runner, document_path, mocker):
    mocker.patch(
        "src.cli.controller.solve_report",
        side_effect=ResourceBudgetExceeded("states", 10, 11, "ata-to-nta"),
    )
    result = runner.invoke(cli, ["solve", str(document_path)])
    assert result.exit_code == 2
    assert "error: ResourceBudgetExceeded in stage ata-to-nta" in result.stderr


def test_budget_flags(runner, document_path, mocker):
    solve_report = mocker.patch(
        "src.cli.controller.solve_report",
        return_value=SolutionReport(verb="solve", decision=True),
    )
    result = runner.invoke(cli, ["solve", str(document_path), "--max-states", "7", "--max-seconds", "2.5"])
    assert result.exit_code == 0
    budget = solve_report.call_args.args[1]
    assert budget.max_states == 7
    assert budget.max_seconds == 2.5
    assert budget.max_candidates == 4096


def test_missing_document(runner, tmp_path):
    result = runner.invoke(cli, ["solve", str(tmp_path / "nowhere.tm")])
    assert result.exit_code == 2
