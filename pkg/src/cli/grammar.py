"""Line-level grammar of instance documents."""

from __future__ import annotations

import re

from src.core.errors import DocumentSyntaxError

NAME = r"[A-Za-z_][A-Za-z0-9_']*"
STATE = r"[A-Za-z0-9_']+"
SYMBOL = rf"(?:#\d+|{NAME}|\$)"

BLOCK = re.compile(
    rf"^(alphabet|variables|problem|word-problem)$"
    rf"|^(automaton|ata|graph|substitution|nfa|arena)\s+({NAME})$"
)
DEFINITION = re.compile(rf"^(tree|regex)\s+({NAME})\s*=\s*(.*)$")
END = re.compile(r"^end$")

RANKED = re.compile(rf"^({NAME})\s+(\d+)$")
OVER = re.compile(r"^over\s+(sigma|sigma\+holes|full|full\+holes)$")
STATES = re.compile(rf"^states((?:\s+{STATE})*)$")
COLORS = re.compile(rf"^colors((?:\s+{STATE}=\d+)*)$")
TRANSITION = re.compile(rf"^({STATE})\s+-({SYMBOL})->((?:\s+{STATE})*)$")
FORMULA = re.compile(rf"^({STATE})\s*,\s*({SYMBOL})\s*:\s*(.+)$")
LITERAL = re.compile(rf"^\(\s*(\d+)\s*,\s*({STATE})\s*\)$")

EQUATION = re.compile(rf"^({NAME})\s*=\s*({SYMBOL})\s*(?:\(([^()]*)\))?$")
ROOT = re.compile(rf"^root\s+({NAME})$")

VARIABLE = re.compile(rf"^var\s+({NAME})\s+rank\s+(\d+)$")
TREES = re.compile(r"^trees:\s*(.*)$")
LANG = re.compile(rf"^lang:\s*({NAME})\s*@\s*({STATE})$")
FULL = re.compile(r"^full$")

NFA_MOVE = re.compile(rf"^({STATE})\s+-({NAME})->\s+({STATE})$")
LETTERS = re.compile(rf"^letters((?:\s+{NAME})*)$")
INITIAL = re.compile(rf"^initial((?:\s+{STATE})*)$")
FINAL = re.compile(rf"^final((?:\s+{STATE})*)$")

VERTEX = re.compile(rf"^({STATE})\s+([01])\s+(\d+)$")
EDGE = re.compile(rf"^({STATE})\s*->\s*({STATE})$")

REFERENCE = re.compile(rf"^(left|right)\s+({NAME})\s*@\s*({STATE})$")
BOUND = re.compile(rf"^(lower|upper)\s+({NAME})$")
WORD_REFERENCE = re.compile(rf"^(left|right)\s+({NAME})$")
WORD_BOUND = re.compile(rf"^(lower|upper)\s+({NAME})\s*=\s*({NAME})$")
WORD_VARIABLES = re.compile(rf"^variables((?:\s+{NAME})*)$")
RELATION = re.compile(r"^relation\s+(subset|equal)$")


def words(group: str | None) -> list[str]:
    return group.split() if group else []


def pairs(group: str | None) -> list[tuple[str, int]]:
    return [(name, int(value)) for name, value in (item.split("=") for item in words(group))]


def parse_symbol(text: str) -> str | int:
    """``#i`` is hole i; every other symbol is its name."""
    if text.startswith("#"):
        return int(text[1:])
    return text


def split_items(text: str) -> list[str]:
    """Splits on top-level ``;``."""
    return [item.strip() for item in text.split(";") if item.strip()]


def parse_formula(text: str, line: int) -> list[list[tuple[int, str]]]:
    """Parses ``(1,p) & (2,q) | (1,q)`` with ``true`` and ``false``.

    Raises:
        DocumentSyntaxError: If a literal is malformed.

    """
    if text.strip() == "false":
        return []
    disjuncts = []
    for part in text.split("|"):
        part = part.strip()
        if part == "true":
            disjuncts.append([])
            continue
        literals = []
        for item in part.split("&"):
            match = LITERAL.match(item.strip())
            if match is None:
                msg = f"malformed literal '{item.strip()}'"
                raise DocumentSyntaxError(msg, line)
            literals.append((int(match.group(1)), match.group(2)))
        disjuncts.append(literals)
    return disjuncts
