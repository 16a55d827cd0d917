"""Centralizes the help texts of the command line."""

from enum import Enum


class Descriptions(str, Enum):
    """A class to hold the descriptions of command line options.

    This has been centralized to ensure that the descriptions are consistent across the
    commands.

    """
    document = "Instance document to read"
    automaton = "Name of an automaton block"
    state = "State of the automaton whose language is meant"
    tree = "Name of a tree or graph block"
    substitution = "Name of a substitution block"
    arena = "Name of an arena block"
    json = "Print the report as JSON"
    dot = "Also write a DOT rendering to this path"
    max_states = "Largest automaton a construction may build"
    max_candidates = "Largest number of candidate substitutions"
    max_profiles = "Largest number of realizable profiles"
    max_seconds = "Wall-clock limit in seconds"
    samples = "Longest sample word listed per image"


def get_command_metadata() -> list[dict[str, str]]:
    """Returns the verb groups shown in the command line help.

    Returns:
        The group definitions.

    """
    return [
        {
            "name": "Automata",
            "description": "member, empty, complement, profiles and game.",
        },
        {
            "name": "Substitutions",
            "description": "saturate, specialize, inverse-image, eval-io and eval-oi.",
        },
        {
            "name": "Matching",
            "description": "solve, solve-nonempty, check and word-solve.",
        },
    ]
