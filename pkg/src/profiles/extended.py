"""The extended alphabet of profile symbols and the automaton B_P reading it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Iterator

from src.automata.nta import ParityNTA, State, Transition
from src.core.errors import ProfileError
from src.profiles.tasks import Profile, ProfileContext, format_profile, holes_of_profile
from src.trees.symbols import Signature, Symbol
from src.trees.terms import Tree, hole


@dataclass(frozen=True)
class Dollar:
    """The unary marker $_i put above every hole i of a profile witness."""

    hole: int

    def __str__(self) -> str:
        return f"${self.hole}"


@dataclass(frozen=True)
class ProfileSymbol:
    """The symbol f_π standing for every tree of profile π."""

    profile: Profile
    holes: frozenset[int]

    def __str__(self) -> str:
        return "f<" + ",".join(str(i) for i in sorted(self.holes)) + f"|{len(self.profile)}>"

    def describe(self, ctx: ProfileContext) -> str:
        return "f{" + "; ".join(format_profile(ctx, self.profile)) + "}"


@dataclass(frozen=True)
class HoleState:
    """State (c, q, i) of B_P guarding a $_i node whose hole is reached in q with bound c."""

    color: int
    state: State
    hole: int


def profile_symbol(ctx: ProfileContext, profile: Profile) -> ProfileSymbol:
    holes = frozenset() if profile.is_empty else holes_of_profile(ctx, profile)
    return ProfileSymbol(profile, holes)


def profile_rank(ctx: ProfileContext, symbol: ProfileSymbol) -> int:
    return len(ctx.states) * len(symbol.holes)


def witness_tree(ctx: ProfileContext, profile: Profile, realizable: Iterable[Profile] | None = None) -> Tree:
    """t_π: f_π over one $_i(i) child per (hole, state), holes ascending then states.

    Raises:
        ProfileError: If a set of realizable profiles is given and π is not in it.

    """
    if realizable is not None and profile not in set(realizable):
        msg = "the profile is not realizable"
        raise ProfileError(msg)
    symbol = profile_symbol(ctx, profile)
    children = tuple(
        Tree(Dollar(i), (hole(i),)) for i in sorted(symbol.holes) for _ in ctx.states
    )
    return Tree(symbol, children)


def extended_signature(ctx: ProfileContext, profiles: Iterable[Profile]) -> Signature:
    """Σ_P together with the holes: Σ, the markers $_i and one f_π per profile."""
    ranks: dict[Symbol, int] = dict(ctx.extended.signature.items())
    for i in ctx.holes:
        ranks[Dollar(i)] = 1
    for profile in profiles:
        symbol = profile_symbol(ctx, profile)
        ranks[symbol] = profile_rank(ctx, symbol)
    return Signature(ranks)


def _surjections(slots: int, targets: list) -> Iterator[tuple]:
    for assignment in cartesian(targets, repeat=slots):
        if set(assignment) == set(targets):
            yield assignment


def extended_automaton(ctx: ProfileContext, profiles: Iterable[Profile]) -> tuple[Signature, ParityNTA]:
    """B_P: B_H plus hole states (c, q, i) and transitions on the profile symbols.

    For each minimal task (p, ψ) of a profile, f_π leads from p to a tuple whose
    slots for hole i range onto the entries (ψ_i(q), q, i) with ψ_i(q) nonzero,
    repetitions allowed. The empty profile gets no transitions.

    """
    profiles = list(profiles)
    signature = extended_signature(ctx, profiles)
    base = ctx.extended
    hole_states = [
        HoleState(c, q, i) for c in ctx.colors for q in ctx.states for i in ctx.holes
    ]
    transitions = list(base.transitions)
    transitions.extend(Transition(h, Dollar(h.hole), (h.state,)) for h in hole_states)
    width = len(ctx.states)
    for profile in profiles:
        symbol = profile_symbol(ctx, profile)
        holes = sorted(symbol.holes)
        for task in profile.tasks:
            groups = []
            for i in holes:
                entries = [
                    HoleState(task.bound(i, k), q, i)
                    for k, q in enumerate(ctx.states)
                    if task.bound(i, k)
                ]
                groups.append(list(_surjections(width, entries)))
            for choice in cartesian(*groups):
                children = tuple(state for part in choice for state in part)
                transitions.append(Transition(task.state, symbol, children))
    colors = dict(base.colors)
    colors.update({h: h.color for h in hole_states})
    automaton = ParityNTA(signature, [*base.states, *hole_states], transitions, colors)
    return signature, automaton
