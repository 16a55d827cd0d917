"""Inverse images of regular tree languages under substitutions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from src.automata.ata import ParityATA, ata_to_nta, dual
from src.automata.boolean import complement
from src.automata.nta import (
    ParityNTA,
    State,
    Transition,
    add_holes,
    extend_signature,
    product,
    relabel_project,
    runs_finite,
    trim,
)
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.profiles.classes import ProfileClass, realizable_profiles
from src.profiles.extended import extended_automaton, witness_tree
from src.profiles.tasks import Profile, ProfileContext, holes_of_profile, path_minima, profile_sort_key
from src.substitutions.images import Language, Substitution
from src.substitutions.saturation import empty_profile_hole_sets, image_profiles, profile_context
from src.trees.symbols import FRESH, Signature, Symbol
from src.trees.terms import Tree, identity_tree

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)


def inverse_image_ata(phi: Mapping[Symbol, Tree], source: Signature, automaton: ParityNTA) -> tuple[ParityATA, dict[State, State]]:
    """An alternating automaton for {s : the φ-image of s is in L(automaton, p)}.

    States are pairs (q, c) colored c. Reading x in (p, c), it picks a run of the
    automaton with holes on φ(x) from p and sends (ρ(leaf), least color on the
    leaf's path) down direction i for every leaf of hole i. Leaves are not merged.

    Returns:
        The automaton and, per state p of the input, the start state (p, χ(p)).

    """
    holes = max((r for r in source.values()), default=0)
    extended = add_holes(automaton, holes)
    colors = sorted(set(automaton.colors.values()))
    states = [(q, c) for q in automaton.states for c in colors]
    formulas: dict[tuple[State, Symbol], list] = {}
    for x, rank in source.items():
        image = phi.get(x, identity_tree(x, rank))
        for p in automaton.states:
            disjuncts = []
            for run in runs_finite(extended, image, p):
                disjuncts.append(
                    tuple((i, (q, least)) for _, i, q, least in path_minima(run, image, automaton.colors))
                )
            disjuncts = list(dict.fromkeys(disjuncts))
            for c in colors:
                formulas[((p, c), x)] = disjuncts
    ata = ParityATA(source, states, formulas, {(q, c): c for q, c in states})
    return ata, {p: (p, automaton.colors[p]) for p in automaton.states}


@dataclass(frozen=True)
class Annotated:
    """A variable occurrence annotated with the profile and hole set of its chosen image."""

    variable: Symbol
    profile: Profile
    holes: frozenset[int]

    def __str__(self) -> str:
        return f"{self.variable}<{','.join(map(str, sorted(self.holes)))}|{len(self.profile)}>"


@dataclass(frozen=True)
class EmptyImage:
    """A variable occurrence whose image is empty."""

    variable: Symbol

    def __str__(self) -> str:
        return f"{self.variable}<empty>"


@dataclass(frozen=True)
class AnnotatedComplement:
    """Annotated trees that are reach-consistent and whose image escapes L(B_P, q0).

    Projecting the annotations away gives T(Σ∪X) minus σ_io⁻¹(L(B, q0)).

    """

    automaton: ParityNTA
    state: State
    options: Mapping[Symbol, tuple[Annotated, ...]]
    target: Signature

    def restricted(self, allowed: Mapping[Symbol, frozenset[Profile]]) -> Language:
        """The projection after keeping only annotations with an allowed profile.

        A variable with no allowed profile reads as having an empty image.

        """
        keep = []
        for t in self.automaton.transitions:
            symbol = t.symbol
            if isinstance(symbol, Annotated) and symbol.profile not in allowed[symbol.variable]:
                continue
            if isinstance(symbol, EmptyImage) and allowed[symbol.variable]:
                continue
            keep.append(t)
        automaton = ParityNTA(self.automaton.signature, self.automaton.states, keep, self.automaton.colors)
        return _project(automaton, self.state, self.target)

    def projected(self) -> Language:
        allowed = {x: frozenset(a.profile for a in options) for x, options in self.options.items()}
        return self.restricted(allowed)


def _project(automaton: ParityNTA, state: State, target: Signature) -> Language:
    def label(symbol: Symbol) -> Symbol:
        if isinstance(symbol, (Annotated, EmptyImage)):
            return symbol.variable
        return symbol

    projected = relabel_project(automaton, label, target)
    return trim(projected, [state]), state


def annotation_options(
    ctx: ProfileContext,
    sigma: Substitution,
    classes: Mapping[Profile, ProfileClass],
    *,
    budget: Budget | None = None,
) -> dict[Symbol, tuple[Annotated, ...]]:
    """Per variable, the (profile, hole set) pairs its image realizes; empty profiles by minimal hole sets."""
    options = {}
    empty = Profile(ctx)
    for x in sigma.variables:
        found = []
        for profile in image_profiles(ctx, sigma, x, classes, budget=budget):
            if profile == empty:
                found.extend(
                    Annotated(x, profile, holes)
                    for holes in empty_profile_hole_sets(ctx, sigma, x, classes, budget=budget)
                )
            else:
                found.append(Annotated(x, profile, holes_of_profile(ctx, profile)))
        options[x] = tuple(found)
    return options


def reach_automaton(signature: Signature) -> Language:
    """Accepts annotated trees in which no reached variable occurrence has an empty image.

    Below an annotation only the children of its holes are reached.

    """
    transitions = []
    for symbol, rank in signature.items():
        transitions.append(Transition("free", symbol, ("free",) * rank))
        if isinstance(symbol, EmptyImage):
            continue
        if isinstance(symbol, Annotated):
            children = tuple("reached" if i in symbol.holes else "free" for i in range(1, rank + 1))
        else:
            children = ("reached",) * rank
        transitions.append(Transition("reached", symbol, children))
    automaton = ParityNTA(signature, ["reached", "free"], transitions, {"reached": 2, "free": 2})
    return automaton, "reached"


@stage("annotated-complement")
def annotated_complement(
    sigma: Substitution,
    automaton: ParityNTA,
    q0: State,
    options: Mapping[Symbol, tuple[Annotated, ...]] | None = None,
    *,
    ctx: ProfileContext | None = None,
    classes: Mapping[Profile, ProfileClass] | None = None,
    budget: Budget | None = None,
) -> AnnotatedComplement:
    """Builds the annotated complement automaton for σ and R = L(automaton, q0).

    Every variable x becomes the symbols (x, π, H) for the profiles its image
    realizes and (x, empty). The homomorphism γ maps (x, π, H) to t_π and
    (x, empty) to a fresh constant; the complement of γ⁻¹(L(B_P, q0)) comes from
    the dual alternating automaton, cut down by the reach automaton.

    """
    budget = resolve_budget(budget)
    ctx = ctx or profile_context(sigma, automaton)
    if classes is None:
        classes = realizable_profiles(ctx, budget=budget)
    if options is None:
        options = annotation_options(ctx, sigma, classes, budget=budget)
    used = sorted({a.profile for group in options.values() for a in group}, key=profile_sort_key)
    _, b_p = extended_automaton(ctx, used)
    b_p = extend_signature(b_p, Signature({FRESH: 0}))
    # a name in both Σ and X reads only through its annotations
    source_ranks: dict[Symbol, int] = {
        f: rank for f, rank in sigma.alphabet.sigma.items() if f not in sigma.alphabet.variables
    }
    phi: dict[Symbol, Tree] = {}
    for x in sigma.variables:
        rank = sigma.rank(x)
        for annotation in options[x]:
            source_ranks[annotation] = rank
            phi[annotation] = witness_tree(ctx, annotation.profile)
        source_ranks[EmptyImage(x)] = rank
        phi[EmptyImage(x)] = Tree(FRESH)
    source = Signature(source_ranks)
    ata, starts = inverse_image_ata(phi, source, b_p)
    nta, state = ata_to_nta(dual(ata), starts[q0], budget=budget)
    reach = reach_automaton(source)
    meet, start = product(nta, state, *reach)
    budget.check_states("annotated-complement", len(meet))
    target = sigma.alphabet.full
    logger.info(f"Annotated complement has {len(meet)} states over {len(source)} symbols.")
    return AnnotatedComplement(meet, start, dict(options), target)


@stage("inverse-image-complement")
def inverse_image_complement(
    sigma: Substitution, automaton: ParityNTA, q0: State, *, budget: Budget | None = None
) -> Language:
    """An automaton over Σ∪X for the trees s with σ_io(s) not inside L(automaton, q0)."""
    return annotated_complement(sigma, automaton, q0, budget=budget).projected()


@stage("inverse-image")
def inverse_image_nta(
    sigma: Substitution, automaton: ParityNTA, q0: State, *, budget: Budget | None = None
) -> Language:
    """An automaton over Σ∪X for σ_io⁻¹(L(automaton, q0)) = {s : σ_io(s) ⊆ L(automaton, q0)}."""
    budget = resolve_budget(budget)
    outside, state = inverse_image_complement(sigma, automaton, q0, budget=budget)
    return complement(outside, state, budget=budget)