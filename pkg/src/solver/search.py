"""Candidate enumeration, candidate checks and the extraction of maximal solutions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from itertools import product as cartesian
from typing import Mapping

from src.automata.boolean import Language, intersect
from src.automata.nta import accepted_trees, extend_signature, is_empty, member
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.profiles.classes import realizable_profiles
from src.profiles.tasks import Profile, profile_sort_key
from src.solver.instance import MatchingInstance, Solution, SolutionSet, check_order
from src.substitutions.evaluation import eval_io_finite
from src.substitutions.images import FullImage, ProfileUnion, Substitution, explicit_substitution, full_substitution
from src.substitutions.inverse import annotated_complement, annotation_options, inverse_image_complement
from src.substitutions.saturation import image_profiles, profile_context
from src.trees.symbols import RankedAlphabet, Symbol
from src.trees.terms import Tree

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

Candidate = Mapping[Symbol, frozenset[Profile]]


def _over_full_alphabet(instance: MatchingInstance) -> Language:
    automaton, state = instance.left
    return extend_signature(automaton, instance.alphabet.full), state


class _Search:
    """The data every candidate of one instance shares.

    The annotated complement is built once for the upper bound; a candidate only
    filters its annotations. Verdicts are kept per candidate.

    """

    def __init__(self, instance: MatchingInstance, budget: Budget):
        self.instance = instance
        self.budget = budget
        self.variables = instance.lower.variables
        upper = instance.upper
        self.ctx = profile_context(upper, instance.right_automaton)
        self.classes = realizable_profiles(self.ctx, budget=budget)
        self.upper_profiles = {
            x: frozenset(image_profiles(self.ctx, upper, x, self.classes, budget=budget))
            for x in self.variables
        }
        options = annotation_options(self.ctx, upper, self.classes, budget=budget)
        self.complement = annotated_complement(
            upper,
            instance.right_automaton,
            instance.right_state,
            options,
            ctx=self.ctx,
            classes=self.classes,
            budget=budget,
        )
        self.left = _over_full_alphabet(instance)
        self.verdicts: dict[tuple, bool] = {}

    def profiles_of(self, sigma: Substitution) -> dict[Symbol, frozenset[Profile]]:
        return {
            x: frozenset(image_profiles(self.ctx, sigma, x, self.classes, budget=self.budget))
            for x in self.variables
        }

    def candidates(self, required: Candidate) -> list[dict[Symbol, frozenset[Profile]]]:
        """All profile choices between the required sets and the upper bound's, largest first."""
        free = {
            x: sorted(self.upper_profiles[x] - required[x], key=profile_sort_key) for x in self.variables
        }
        self.budget.check_candidates("candidate-set", 2 ** sum(len(v) for v in free.values()))
        choices = []
        for x in self.variables:
            options = free[x]
            choices.append([
                required[x] | frozenset(chosen)
                for size in range(len(options), -1, -1)
                for chosen in combinations(options, size)
            ])
        found = [dict(zip(self.variables, picks)) for picks in cartesian(*choices)]
        found.sort(key=lambda c: -sum(len(s) for s in c.values()))
        return found

    def check(self, candidate: Candidate) -> bool:
        key = tuple(candidate[x] for x in self.variables)
        if key not in self.verdicts:
            self.budget.check_time("check-candidate")
            outside = self.complement.restricted(candidate)
            meet = intersect(*self.left, *outside, budget=self.budget)
            self.verdicts[key] = is_empty(*meet)
            sizes = ", ".join(f"{x}:{len(candidate[x])}" for x in self.variables)
            logger.info(f"Candidate ({sizes}) {'passes' if self.verdicts[key] else 'fails'}.")
        return self.verdicts[key]

    def run(self, required: Candidate, passing: list[dict]) -> None:
        """Adds the passing candidates above the required sets that no passing one dominates."""
        for candidate in self.candidates(required):
            if any(_dominated(candidate, other) for other in passing):
                continue
            if self.check(candidate):
                passing.append(candidate)

    def solution(self, candidate: Candidate) -> Solution:
        upper = self.instance.upper
        images = {}
        profiles = {}
        for x in self.variables:
            chosen = tuple(sorted(candidate[x], key=profile_sort_key))
            bound = None if isinstance(upper.image(x), FullImage) else upper.automaton(x)
            images[x] = ProfileUnion(
                chosen,
                tuple((self.classes[p].automaton, self.classes[p].state) for p in chosen),
                bound,
            )
            profiles[x] = chosen
        return Solution(profiles, upper.with_images(images))

    def result(self, passing: list[dict]) -> SolutionSet:
        maximal = [c for c in passing if not any(_dominated(c, other) for other in passing)]
        return SolutionSet(
            decision=bool(maximal),
            solutions=tuple(self.solution(c) for c in maximal),
            checked=len(self.verdicts),
            profile_count=len(self.classes),
            profiles=tuple(self.classes),
        )


def _dominated(candidate: Candidate, other: Candidate) -> bool:
    return candidate != other and all(candidate[x] <= other[x] for x in candidate)


@stage("candidate-set")
def candidate_set(instance: MatchingInstance, *, budget: Budget | None = None) -> list[Substitution]:
    """The substitutions σ̂ ∩ σ2 with σ1 ≤ σ̂, as unions of profile classes; largest first."""
    budget = resolve_budget(budget)
    check_order(instance.lower, instance.upper, budget=budget)
    search = _Search(instance, budget)
    required = search.profiles_of(instance.lower)
    return [search.solution(c).substitution for c in search.candidates(required)]


@stage("check-candidate")
def check_candidate(instance: MatchingInstance, sigma: Substitution, *, budget: Budget | None = None) -> bool:
    """Whether σ_io(L) ⊆ R, decided as L ∩ (T(Σ∪X) ∖ σ_io⁻¹(R)) = ∅."""
    budget = resolve_budget(budget)
    outside = inverse_image_complement(sigma, instance.right_automaton, instance.right_state, budget=budget)
    meet = intersect(*_over_full_alphabet(instance), *outside, budget=budget)
    return is_empty(*meet)


@stage("solve")
def solve(instance: MatchingInstance, *, budget: Budget | None = None) -> SolutionSet:
    """Decides whether some σ1 ≤ σ ≤ σ2 has σ_io(L) ⊆ R and returns the maximal such σ.

    Candidates are tried from the largest profile sets down. A candidate below a
    passing one is skipped, so every passing candidate found is maximal.

    Raises:
        SubstitutionOrderError: If σ1 ≤ σ2 fails.
        ResourceBudgetExceeded: If a construction or the candidate count runs past the budget.

    """
    budget = resolve_budget(budget)
    check_order(instance.lower, instance.upper, budget=budget)
    search = _Search(instance, budget)
    required = search.profiles_of(instance.lower)
    passing: list[dict] = []
    search.run(required, passing)
    result = search.result(passing)
    logger.info(f"Solve checked {result.checked} candidates, found {len(result.solutions)} maximal solutions.")
    return result


@stage("solve-nonempty")
def solve_nonempty(
    alphabet: RankedAlphabet, left: Language, right: Language, *, budget: Budget | None = None
) -> SolutionSet:
    """The maximal σ with σ_io(L) ⊆ R and every σ(x) nonempty.

    Every guess x ↦ π_x of a realizable profile makes class(π_x) the lower bound;
    the upper bound is every tree but the bare holes. Verdicts are shared between
    guesses and the passing candidates of all guesses are maximized together.

    """
    budget = resolve_budget(budget)
    upper = full_substitution(alphabet)
    instance = MatchingInstance(alphabet, left, right, upper, upper)
    search = _Search(instance, budget)
    guesses = [sorted(search.upper_profiles[x], key=profile_sort_key) for x in search.variables]
    passing: list[dict] = []
    for guess in cartesian(*guesses):
        search.run({x: frozenset({p}) for x, p in zip(search.variables, guess)}, passing)
    result = search.result(passing)
    logger.info(f"Solve-nonempty checked {result.checked} candidates.")
    return result


@dataclass(frozen=True)
class EqualityCheck:
    """Outcome of the sampling check of σ_io(L) = R; never a proof of equality.

    Attributes:
        refuted: Whether a sampled image tree lies outside R.
        counterexample: That image tree.
        unmatched: Sampled trees of R no sampled image produced; they refute nothing.

    """

    refuted: bool
    counterexample: Tree | None = None
    unmatched: tuple[Tree, ...] = ()


@stage("verify-equality")
def verify_equality(
    sigma: Substitution,
    left: Language,
    right: Language,
    *,
    max_size: int = 4,
    image_size: int = 3,
    budget: Budget | None = None,
) -> EqualityCheck:
    """Samples σ_io(L) against R in both directions.

    Images come from trees of size up to image_size in every σ(x); IO evaluation is
    monotone in σ, so an image outside R refutes the equation.

    """
    budget = resolve_budget(budget)
    images = {x: accepted_trees(*sigma.automaton(x), image_size) for x in sigma.variables}
    sample = explicit_substitution(sigma.alphabet, images)
    automaton, state = left
    produced: set[Tree] = set()
    for s in accepted_trees(extend_signature(automaton, sigma.alphabet.full), state, max_size):
        budget.check_time("verify-equality")
        for t in eval_io_finite(sample, s):
            if not member(right[0], t, right[1]):
                logger.info(f"Image {t} of {s} lies outside the right language.")
                return EqualityCheck(refuted=True, counterexample=t)
            produced.add(t)
    unmatched = tuple(t for t in accepted_trees(*right, max_size) if t not in produced)
    return EqualityCheck(refuted=False, unmatched=unmatched)
