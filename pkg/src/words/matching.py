"""Matching of finite-word languages through the transition monoid of an NFA."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from itertools import product as cartesian
from typing import Iterable, Literal, Mapping

import numpy as np

from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.core.errors import AlphabetMismatchError, SubstitutionOrderError
from src.trees.symbols import Symbol, value_key
from src.words.nfa import (
    WordNFA,
    empty,
    equivalent,
    included_in,
    intersection,
    regular_substitution,
    union,
    universal,
)

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

Relation = Literal["subset", "equal"]


def compose(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """The Boolean matrix product: (first·second)[p, q] iff some r has first[p, r] and second[r, q]."""
    return (first.astype(np.int64) @ second.astype(np.int64)) > 0


def matrix_key(matrix: np.ndarray) -> bytes:
    return np.packbits(matrix, axis=None).tobytes()


class TransitionMonoid:
    """μ: Σ* → Boolean Q×Q matrices with μ(w)[p, q] iff w leads from p to q.

    Attributes:
        order: The states in matrix index order.
        generators: μ(a) per letter.
        elements: μ(Σ⁺) by key, closed under products with letters.

    """

    def __init__(self, nfa: WordNFA, letters: Iterable[Symbol] | None = None):
        self.nfa = nfa
        self.letters = sorted(nfa.letters | frozenset(letters or ()), key=value_key)
        self.order = nfa.sorted_states()
        self.index = {p: i for i, p in enumerate(self.order)}
        size = len(self.order)
        self.identity = np.eye(size, dtype=bool)
        self.generators: dict[Symbol, np.ndarray] = {}
        for a in self.letters:
            matrix = np.zeros((size, size), dtype=bool)
            for p, b, q in nfa.transitions:
                if b == a:
                    matrix[self.index[p], self.index[q]] = True
            self.generators[a] = matrix
        self.elements = self._closure()
        logger.debug(f"Transition monoid of {size} states has {len(self.elements)} elements on nonempty words.")

    def _closure(self) -> dict[bytes, np.ndarray]:
        found: dict[bytes, np.ndarray] = {}
        queue = deque()
        for a in self.letters:
            matrix = self.generators[a]
            if matrix_key(matrix) not in found:
                found[matrix_key(matrix)] = matrix
                queue.append(matrix)
        while queue:
            matrix = queue.popleft()
            for a in self.letters:
                product = compose(matrix, self.generators[a])
                key = matrix_key(product)
                if key not in found:
                    found[key] = product
                    queue.append(product)
        return found

    def of_word(self, word: Iterable[Symbol]) -> np.ndarray:
        return reduce(compose, (self.generators[a] for a in word), self.identity)

    def same_class(self, u: Iterable[Symbol], v: Iterable[Symbol]) -> bool:
        return bool(np.array_equal(self.of_word(u), self.of_word(v)))

    def class_automaton(self, key: bytes) -> WordNFA:
        """The nonempty words w with μ(w) equal to the element named by key."""
        start = "start"
        transitions = [(start, a, matrix_key(self.generators[a])) for a in self.letters]
        for source, matrix in self.elements.items():
            for a in self.letters:
                transitions.append((source, a, matrix_key(compose(matrix, self.generators[a]))))
        return WordNFA.build([start, *self.elements], self.letters, transitions, [start], [key])

    def accepts_class(self, key: bytes) -> bool:
        """Whether the words of the class are in L(nfa)."""
        matrix = self.elements[key]
        rows = [self.index[p] for p in self.nfa.initial]
        cols = [self.index[q] for q in self.nfa.final]
        return bool(matrix[np.ix_(rows, cols)].any()) if rows and cols else False


def transition_morphism(nfa: WordNFA, letters: Iterable[Symbol] | None = None) -> TransitionMonoid:
    """Builds μ on the letters together with the closure μ(Σ⁺)."""
    return TransitionMonoid(nfa, letters)


@dataclass(frozen=True)
class WordInstance:
    """σ1 ≤ σ ≤ σ2 with σ(L) related to R; variables are the letters with images.

    Bounds default to the empty language and Σ⁺ respectively.

    """

    left: WordNFA
    right: WordNFA
    variables: frozenset
    lower: Mapping[Symbol, WordNFA] = field(default_factory=dict)
    upper: Mapping[Symbol, WordNFA] = field(default_factory=dict)
    relation: Relation = "subset"

    @property
    def sigma(self) -> frozenset:
        return (self.left.letters - self.variables) | self.right.letters | frozenset(
            a for image in [*self.lower.values(), *self.upper.values()] for a in image.letters
        )

    def lower_bound(self, x: Symbol) -> WordNFA:
        return self.lower.get(x, empty(self.sigma))

    def upper_bound(self, x: Symbol) -> WordNFA:
        plus = universal(self.sigma, nonempty=True)
        return intersection(self.upper[x], plus) if x in self.upper else plus


@dataclass(frozen=True)
class WordSolution:
    """A maximal solution: the monoid elements per variable and the images they define."""

    classes: Mapping[Symbol, frozenset[bytes]]
    images: Mapping[Symbol, WordNFA]


@dataclass(frozen=True)
class WordSolutionSet:
    decision: bool
    solutions: tuple[WordSolution, ...] = ()
    checked: int = 0
    monoid_size: int = 0


def _check_bounds(instance: WordInstance) -> None:
    for x in instance.variables:
        if x in instance.right.letters:
            msg = f"variable {x} is a letter of the right language"
            raise AlphabetMismatchError(msg)
        lower = instance.lower_bound(x)
        if lower.accepts(()):
            msg = f"the lower bound of {x} contains the empty word"
            raise AlphabetMismatchError(msg)
        if not included_in(lower, instance.upper_bound(x)):
            msg = f"the lower bound of {x} is not contained in its upper bound"
            raise SubstitutionOrderError(msg)


@stage("word-solve")
def solve_word_matching(instance: WordInstance, *, budget: Budget | None = None) -> WordSolutionSet:
    """Decides σ(L) ⊆ R or σ(L) = R over σ1 ≤ σ ≤ σ2 and returns the maximal solutions.

    Each image is cut into classes of equal transition matrix; candidates are the
    unions of classes between those σ1 and σ2 meet, intersected with σ2.

    Raises:
        SubstitutionOrderError: If σ1 ≤ σ2 fails.
        AlphabetMismatchError: If a bound contains the empty word or a variable is a letter of R.

    """
    budget = resolve_budget(budget)
    _check_bounds(instance)
    sigma = instance.sigma
    monoid = transition_morphism(instance.right, sigma)
    classes = {key: monoid.class_automaton(key) for key in monoid.elements}
    variables = sorted(instance.variables, key=value_key)

    def meets(language: WordNFA) -> frozenset[bytes]:
        return frozenset(key for key, automaton in classes.items() if not intersection(language, automaton).is_empty())

    lower = {x: meets(instance.lower_bound(x)) for x in variables}
    upper = {x: meets(instance.upper_bound(x)) for x in variables}
    free = {x: sorted(upper[x] - lower[x]) for x in variables}
    budget.check_candidates("word-candidates", 2 ** sum(len(v) for v in free.values()))
    choices = [
        [lower[x] | frozenset(chosen) for size in range(len(free[x]), -1, -1) for chosen in combinations(free[x], size)]
        for x in variables
    ]
    candidates = sorted(
        (dict(zip(variables, picks)) for picks in cartesian(*choices)),
        key=lambda c: -sum(len(s) for s in c.values()),
    )

    def images_of(candidate: Mapping[Symbol, frozenset[bytes]]) -> dict[Symbol, WordNFA]:
        images = {}
        for x in variables:
            parts = [classes[key] for key in sorted(candidate[x])]
            combined = reduce(union, parts) if parts else empty(sigma)
            images[x] = intersection(combined, instance.upper_bound(x))
        return images

    passing: list[dict] = []
    checked = 0
    for candidate in candidates:
        if instance.relation == "subset" and any(_dominated(candidate, other) for other in passing):
            continue
        budget.check_time("word-solve")
        image = regular_substitution(instance.left, images_of(candidate))
        checked += 1
        if instance.relation == "subset":
            holds = included_in(image, instance.right)
        else:
            holds = equivalent(image, instance.right)
        if holds:
            passing.append(candidate)
    maximal = [c for c in passing if not any(_dominated(c, other) for other in passing)]
    logger.info(f"Word matching checked {checked} candidates, {len(maximal)} maximal solutions.")
    return WordSolutionSet(
        decision=bool(maximal),
        solutions=tuple(WordSolution(c, images_of(c)) for c in maximal),
        checked=checked,
        monoid_size=len(monoid.elements),
    )


def _dominated(candidate: Mapping, other: Mapping) -> bool:
    return candidate != other and all(candidate[x] <= other[x] for x in candidate)
