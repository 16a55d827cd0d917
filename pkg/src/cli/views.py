"""Contains the commands of the tree-match command line."""

import logging
from functools import wraps
from pathlib import Path
from typing import Any, Callable

import click

from src.cli import controller
from src.cli.document import InstanceDocument, parse
from src.core.budget import Budget
from src.core.config import get_settings
from src.core.descriptions import Descriptions
from src.core.errors import DocumentSemanticError, DocumentSyntaxError, ResourceBudgetExceeded, TreeMatchError
from src.core.schemas import BaseReport, ErrorReport

logger = logging.getLogger(get_settings().LOGGER_CLI_NAME)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

document_argument = click.argument(
    "document", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
json_option = click.option("--json", "as_json", is_flag=True, help=Descriptions.json.value)
dot_option = click.option("--dot", type=click.Path(dir_okay=False), default=None, help=Descriptions.dot.value)
automaton_option = click.option("--automaton", "-a", required=True, help=Descriptions.automaton.value)
state_option = click.option("--state", "-q", required=True, help=Descriptions.state.value)
substitution_option = click.option("--substitution", "-s", required=True, help=Descriptions.substitution.value)


def budget_options(function: Callable) -> Callable:
    """Adds the four budget flags; they arrive as ``budget`` keyword."""

    @click.option("--max-states", type=click.IntRange(min=1), default=None, help=Descriptions.max_states.value)
    @click.option("--max-candidates", type=click.IntRange(min=1), default=None, help=Descriptions.max_candidates.value)
    @click.option("--max-profiles", type=click.IntRange(min=1), default=None, help=Descriptions.max_profiles.value)
    @click.option("--max-seconds", type=click.FloatRange(min=0), default=None, help=Descriptions.max_seconds.value)
    @wraps(function)
    def wrapper(max_states, max_candidates, max_profiles, max_seconds, **kwargs: Any) -> Any:
        budget = Budget.from_settings(
            max_states=max_states,
            max_candidates=max_candidates,
            max_profiles=max_profiles,
            max_seconds=max_seconds,
        )
        return function(budget=budget, **kwargs)

    return wrapper


def _emit(report: BaseReport, as_json: bool, err: bool = False) -> None:
    text = report.model_dump_json(indent=2) + "\n" if as_json else report.render()
    click.echo(text, nl=False, err=err and not as_json)


def _error_report(verb: str, error: TreeMatchError) -> ErrorReport:
    report = ErrorReport(verb=verb, kind=type(error).__name__, message=str(error))
    if isinstance(error, ResourceBudgetExceeded):
        report.stage = error.stage
    elif isinstance(error, DocumentSyntaxError):
        report.line, report.column = error.line, error.column
    elif isinstance(error, DocumentSemanticError):
        report.line = error.line
    return report


def reports(verb: str, verdict: Callable[[Any], bool] | None = None) -> Callable:
    """Runs a verb on the parsed document, prints its report and sets the exit code.

    Args:
        verb: The verb name used in the report and the log.
        verdict: Maps the report to yes or no; verbs without one exit 0 on success.

    Returns:
        The decorator.

    """

    def decorator(function: Callable) -> Callable:
        @wraps(function)
        def wrapper(document: Path, as_json: bool, **kwargs: Any) -> None:
            logger.info(f"Dispatching {verb} on {document}.")
            try:
                doc = parse(document.read_text(encoding="utf-8"))
                report = function(doc, **kwargs)
            except TreeMatchError as error:
                logger.error(f"{verb} failed: {error}")
                _emit(_error_report(verb, error), as_json, err=True)
                code = EXIT_ERROR
            else:
                _emit(report, as_json)
                code = EXIT_YES if verdict is None or verdict(report) else EXIT_NO
            logger.info(f"{verb} exits with {code}.")
            click.get_current_context().exit(code)

        return wrapper

    return decorator


@click.command("member")
@document_argument
@automaton_option
@state_option
@click.option("--tree", "-t", required=True, help=Descriptions.tree.value)
@json_option
@reports("member", verdict=lambda report: report.member)
def member(doc: InstanceDocument, automaton: str, state: str, tree: str):
    """Tests whether a tree belongs to L(A, q)."""
    return controller.member_report(doc, automaton, state, tree)


@click.command("empty")
@document_argument
@automaton_option
@state_option
@dot_option
@json_option
@reports("empty", verdict=lambda report: report.empty)
def empty(doc: InstanceDocument, automaton: str, state: str, dot: str | None):
    """Decides emptiness of L(A, q) and prints a witness when it is not empty."""
    return controller.empty_report(doc, automaton, state, dot)


@click.command("complement")
@document_argument
@automaton_option
@state_option
@dot_option
@json_option
@budget_options
@reports("complement")
def complement(doc: InstanceDocument, automaton: str, state: str, dot: str | None, budget: Budget):
    """Prints an automaton for the complement of L(A, q)."""
    return controller.complement_report(doc, automaton, state, dot, budget)


@click.command("profiles")
@document_argument
@automaton_option
@json_option
@budget_options
@reports("profiles")
def profiles(doc: InstanceDocument, automaton: str, budget: Budget):
    """Lists the realizable profiles of an automaton over the document alphabet."""
    return controller.profiles_report(doc, automaton, budget)


@click.command("saturate")
@document_argument
@automaton_option
@substitution_option
@json_option
@budget_options
@reports("saturate")
def saturate(doc: InstanceDocument, automaton: str, substitution: str, budget: Budget):
    """Closes every image of a substitution up to its profile classes."""
    return controller.saturate_report(doc, automaton, substitution, budget)


@click.command("specialize")
@document_argument
@automaton_option
@substitution_option
@json_option
@budget_options
@reports("specialize")
def specialize(doc: InstanceDocument, automaton: str, substitution: str, budget: Budget):
    """Replaces every image of a substitution by the witness trees of its profiles."""
    return controller.specialize_report(doc, automaton, substitution, budget)


@click.command("inverse-image")
@document_argument
@automaton_option
@state_option
@substitution_option
@dot_option
@json_option
@budget_options
@reports("inverse-image")
def inverse_image(doc: InstanceDocument, automaton: str, state: str, substitution: str, dot: str | None, budget: Budget):
    """Prints an automaton for the trees whose IO images all lie in L(A, q)."""
    return controller.inverse_image_report(doc, automaton, state, substitution, dot, budget)


@click.command("solve")
@document_argument
@json_option
@budget_options
@reports("solve", verdict=lambda report: report.decision)
def solve(doc: InstanceDocument, budget: Budget):
    """Solves the problem block and prints the maximal solutions."""
    return controller.solve_report(doc, budget)


@click.command("solve-nonempty")
@document_argument
@json_option
@budget_options
@reports("solve-nonempty", verdict=lambda report: report.decision)
def solve_nonempty(doc: InstanceDocument, budget: Budget):
    """Solves the problem block asking every image to be nonempty."""
    return controller.solve_nonempty_report(doc, budget)


@click.command("check")
@document_argument
@substitution_option
@json_option
@budget_options
@reports("check", verdict=lambda report: report.decision)
def check(doc: InstanceDocument, substitution: str, budget: Budget):
    """Checks one substitution against the problem block."""
    return controller.check_report(doc, substitution, budget)


@click.command("word-solve")
@document_argument
@click.option("--samples", type=click.IntRange(min=0), default=3, show_default=True, help=Descriptions.samples.value)
@json_option
@budget_options
@reports("word-solve", verdict=lambda report: report.decision)
def word_solve(doc: InstanceDocument, samples: int, budget: Budget):
    """Solves the word-problem block."""
    return controller.word_solve_report(doc, budget, samples)


@click.command("eval-io")
@document_argument
@substitution_option
@click.option("--tree", "-t", required=True, help=Descriptions.tree.value)
@json_option
@reports("eval-io")
def eval_io(doc: InstanceDocument, substitution: str, tree: str):
    """Prints the inside-out images of a finite tree."""
    return controller.eval_report(doc, substitution, tree, "io")


@click.command("eval-oi")
@document_argument
@substitution_option
@click.option("--tree", "-t", required=True, help=Descriptions.tree.value)
@json_option
@reports("eval-oi")
def eval_oi(doc: InstanceDocument, substitution: str, tree: str):
    """Prints the outside-in images of a finite tree."""
    return controller.eval_report(doc, substitution, tree, "oi")


@click.command("game")
@document_argument
@click.option("--arena", required=True, help=Descriptions.arena.value)
@dot_option
@json_option
@reports("game")
def game(doc: InstanceDocument, arena: str, dot: str | None):
    """Solves a parity game and prints both winning regions."""
    return controller.game_report(doc, arena, dot)


commands = [
    member,
    empty,
    complement,
    profiles,
    saturate,
    specialize,
    inverse_image,
    solve,
    solve_nonempty,
    check,
    word_solve,
    eval_io,
    eval_oi,
    game,
]
