"""Error hierarchy shared by the engine and the command line."""

from __future__ import annotations


class TreeMatchError(Exception):
    """Base class of every error raised by the engine."""


class PositionError(TreeMatchError):
    """A position does not address a node of the tree."""


class MissingImageError(TreeMatchError):
    """A hole, a leaf or a variable has no image."""


class AlphabetMismatchError(TreeMatchError):
    """Two automata or a tree and an automaton disagree on the alphabet."""


class RankMismatchError(TreeMatchError):
    """A symbol is used with a rank other than its declared one."""


class ColorRangeError(TreeMatchError):
    """A color lies outside the admissible range."""


class StateMismatchError(TreeMatchError):
    """A run does not start in the state a task expects."""


class ArenaTooLargeError(TreeMatchError):
    """The arena is too large for exhaustive strategy enumeration."""


class MalformedSolutionError(TreeMatchError):
    """A game solution does not fit the arena it claims to solve."""


class ProfileError(TreeMatchError):
    """A profile is empty where holes are asked for, or is not realizable."""


class SubstitutionOrderError(TreeMatchError):
    """The lower substitution bound is not below the upper one."""


class InfiniteTreeError(TreeMatchError):
    """A finite tree was asked for, but the graph unfolds to an infinite tree."""


class ResourceBudgetExceeded(TreeMatchError):
    """A construction ran past one of its resource limits.

    Attributes:
        stage: The pipeline stage that ran out of budget.
        limit: The configured limit.
        observed: The value that went past the limit.

    """

    def __init__(self, resource: str, limit: float, observed: float, stage: str | None = None):
        self.resource = resource
        self.limit = limit
        self.observed = observed
        self.stage = stage
        super().__init__(self._message())

    def _message(self) -> str:
        where = f" in stage '{self.stage}'" if self.stage else ""
        return f"{self.resource} budget of {self.limit} exceeded{where} (observed {self.observed})"

    def __str__(self) -> str:
        return self._message()


class DocumentSyntaxError(TreeMatchError):
    """The document text does not follow the grammar."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DocumentSemanticError(TreeMatchError):
    """The document parses, but names, ranks or hole bounds are inconsistent."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
