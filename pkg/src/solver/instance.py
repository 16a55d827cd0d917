"""Matching instances and their solution sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from src.automata.boolean import Language, boolean_combination
from src.automata.nta import ParityNTA, State, is_empty
from src.core.budget import Budget, resolve_budget
from src.core.errors import AlphabetMismatchError, SubstitutionOrderError
from src.profiles.tasks import Profile
from src.substitutions.images import FullImage, Substitution
from src.trees.symbols import RankedAlphabet, Symbol


@dataclass(frozen=True)
class MatchingInstance:
    """L over Σ∪X, R = L(right, q0) over Σ, and the bounds σ1 ≤ σ2.

    Raises:
        AlphabetMismatchError: If the languages or bounds use other alphabets.

    """

    alphabet: RankedAlphabet
    left: Language
    right: Language
    lower: Substitution
    upper: Substitution

    def __post_init__(self) -> None:
        left_symbols = set(self.left[0].signature)
        if not left_symbols <= set(self.alphabet.full):
            msg = "the left language uses symbols outside Σ and the variables"
            raise AlphabetMismatchError(msg)
        right_symbols = set(self.right[0].signature)
        if not right_symbols <= set(self.alphabet.sigma):
            msg = "the right language uses symbols outside Σ"
            raise AlphabetMismatchError(msg)
        for bound in (self.lower, self.upper):
            if bound.alphabet != self.alphabet:
                msg = "the bounds must be substitutions over the instance alphabet"
                raise AlphabetMismatchError(msg)

    @property
    def right_automaton(self) -> ParityNTA:
        return self.right[0]

    @property
    def right_state(self) -> State:
        return self.right[1]


def check_order(lower: Substitution, upper: Substitution, *, budget: Budget | None = None) -> None:
    """Checks σ1(x) ⊆ σ2(x) for every variable.

    Raises:
        SubstitutionOrderError: Naming the first variable where the inclusion fails.

    """
    budget = resolve_budget(budget)
    for x in lower.variables:
        if isinstance(upper.image(x), FullImage):
            continue
        difference = boolean_combination([lower.automaton(x)], [upper.automaton(x)], budget=budget)
        if not is_empty(*difference):
            msg = f"the lower bound of {x} is not contained in its upper bound"
            raise SubstitutionOrderError(msg)


@dataclass(frozen=True)
class Solution:
    """One maximal solution: the profiles per variable and the substitution they define."""

    profiles: Mapping[Symbol, tuple[Profile, ...]]
    substitution: Substitution


@dataclass(frozen=True)
class SolutionSet:
    """The decision and the maximal solutions; ``checked`` counts candidate checks.

    ``profiles`` lists the realizable profiles in the order reports index them.

    """

    decision: bool
    solutions: tuple[Solution, ...] = ()
    checked: int = 0
    profile_count: int = 0
    profiles: tuple[Profile, ...] = field(default=())
