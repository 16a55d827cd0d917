"""Saturation and specialization of substitutions with respect to an automaton's profiles."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from src.automata.boolean import intersect
from src.automata.nta import ParityNTA, Transition, extend_signature, is_empty, product
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.profiles.classes import ProfileClass, realizable_profiles
from src.profiles.extended import extended_automaton, witness_tree
from src.profiles.tasks import Profile, ProfileContext, profile_of, profile_sort_key
from src.substitutions.images import Language, ProfileUnion, Substitution, TreeSet
from src.trees.graphs import TreeGraph
from src.trees.symbols import RankedAlphabet, Signature, Symbol, is_hole
from src.trees.terms import Tree, holes_of

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)


def profile_context(sigma: Substitution, automaton: ParityNTA) -> ProfileContext:
    """The profile context of an automaton over Σ for the holes of a substitution's alphabet."""
    base = extend_signature(automaton, sigma.alphabet.sigma)
    return ProfileContext(base, sigma.alphabet.hole_count)


def _tree_holes(t: Tree | TreeGraph) -> frozenset[int]:
    if isinstance(t, Tree):
        return holes_of(t)
    return frozenset(label for label in t.labels if is_hole(label))


@stage("image-profiles")
def image_profiles(
    ctx: ProfileContext,
    sigma: Substitution,
    x: Symbol,
    classes: Mapping[Profile, ProfileClass],
    *,
    budget: Budget | None = None,
) -> list[Profile]:
    """Π_x: the profiles of the trees in σ(x)."""
    image = sigma.image(x)
    if isinstance(image, TreeSet):
        found = {profile_of(ctx, t) for t in image.trees}
    else:
        language = sigma.automaton(x)
        found = set()
        for profile, entry in classes.items():
            meet = intersect(*language, entry.automaton, entry.state, budget=budget)
            if not is_empty(*meet):
                found.add(profile)
    return sorted(found, key=profile_sort_key)


def holes_within(signature: Signature, holes: frozenset[int]) -> Language:
    """Trees whose holes all lie in the given set."""
    transitions = [
        Transition("any", f, ("any",) * rank)
        for f, rank in signature.items()
        if not is_hole(f) or f in holes
    ]
    return ParityNTA(signature, ["any"], transitions, {"any": 2}), "any"


@stage("empty-profile-holes")
def empty_profile_hole_sets(
    ctx: ProfileContext,
    sigma: Substitution,
    x: Symbol,
    classes: Mapping[Profile, ProfileClass],
    *,
    budget: Budget | None = None,
) -> list[frozenset[int]]:
    """The minimal hole sets of trees in σ(x) whose profile is empty."""
    empty = Profile(ctx)
    image = sigma.image(x)
    if isinstance(image, TreeSet):
        sets = {_tree_holes(t) for t in image.trees if profile_of(ctx, t) == empty}
        return sorted(
            (h for h in sets if not any(other < h for other in sets)),
            key=lambda h: (len(h), sorted(h)),
        )
    if empty not in classes:
        return []
    entry = classes[empty]
    language = intersect(*sigma.automaton(x), entry.automaton, entry.state, budget=budget)
    found: list[frozenset[int]] = []
    rank = sigma.rank(x)
    for size in range(rank + 1):
        for chosen in combinations(range(1, rank + 1), size):
            holes = frozenset(chosen)
            if any(h <= holes for h in found):
                continue
            if not is_empty(*product(*language, *holes_within(ctx.extended.signature, holes))):
                found.append(holes)
    return found


@stage("saturate")
def saturate(
    sigma: Substitution,
    ctx: ProfileContext,
    classes: Mapping[Profile, ProfileClass] | None = None,
    *,
    budget: Budget | None = None,
) -> Substitution:
    """σ̂: each image replaced by the union of the classes of its profiles."""
    budget = resolve_budget(budget)
    if classes is None:
        classes = realizable_profiles(ctx, budget=budget)
    images = {}
    for x in sigma.variables:
        profiles = image_profiles(ctx, sigma, x, classes, budget=budget)
        images[x] = ProfileUnion(
            tuple(profiles),
            tuple((classes[p].automaton, classes[p].state) for p in profiles),
        )
        logger.debug(f"Variable {x} realizes {len(profiles)} profiles.")
    return sigma.with_images(images)


@dataclass(frozen=True)
class Specialization:
    """σ̌ together with the alphabet Σ_P and the automaton B_P it is read by."""

    substitution: Substitution
    signature: Signature
    automaton: ParityNTA
    profiles: Mapping[Symbol, list[Profile]]


@stage("specialize")
def specialize(
    sigma: Substitution,
    ctx: ProfileContext,
    classes: Mapping[Profile, ProfileClass] | None = None,
    *,
    budget: Budget | None = None,
) -> Specialization:
    """σ̌: each image replaced by the witness trees t_π of its profiles."""
    budget = resolve_budget(budget)
    if classes is None:
        classes = realizable_profiles(ctx, budget=budget)
    per_variable = {x: image_profiles(ctx, sigma, x, classes, budget=budget) for x in sigma.variables}
    used = sorted({p for profiles in per_variable.values() for p in profiles}, key=profile_sort_key)
    signature, automaton = extended_automaton(ctx, used)
    sigma_p = Signature((f, r) for f, r in signature.items() if not is_hole(f))
    alphabet = RankedAlphabet(sigma_p, sigma.alphabet.variables)
    images = {x: TreeSet(tuple(witness_tree(ctx, p) for p in per_variable[x])) for x in sigma.variables}
    return Specialization(Substitution(alphabet, images), signature, automaton, per_variable)
