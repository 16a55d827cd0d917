"""Alternating parity tree automata with transitions in disjunctive normal form."""

from __future__ import annotations

import logging
from collections import deque
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

from src.automata.nta import ParityNTA, State, Transition, acceptance_arena, normalized, trim
from src.automata.safra import SafraDeterminizer
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.core.errors import AlphabetMismatchError, ColorRangeError, RankMismatchError, StateMismatchError
from src.games.solver import solve
from src.trees.graphs import TreeGraph
from src.trees.symbols import Signature, Symbol, symbol_key, value_key
from src.trees.terms import Tree, format_symbol

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

Literal = tuple[int, State]
Conjunction = tuple[Literal, ...]
Formula = tuple[Conjunction, ...]

FALSE: Formula = ()
TRUE: Formula = ((),)


class ParityATA:
    """An alternating parity tree automaton.

    Every pair (q, f) has exactly one formula, a disjunction of conjunctions of
    (direction, state) literals. Pairs without an explicit formula read as false.
    Repeated literals inside a conjunction are kept.

    """

    def __init__(
        self,
        signature: Signature,
        states: Iterable[State],
        formulas: Mapping[tuple[State, Symbol], Sequence[Sequence[Literal]]],
        colors: Mapping[State, int],
    ):
        self.signature = signature
        self.states = tuple(sorted(set(states), key=value_key))
        known = set(self.states)
        self.colors = {}
        for q in self.states:
            if q not in colors:
                msg = f"state {q!r} has no color"
                raise ColorRangeError(msg)
            if colors[q] < 1:
                msg = f"state {q!r} has color {colors[q]}, colors start at 1"
                raise ColorRangeError(msg)
            self.colors[q] = colors[q]
        self.formulas: dict[tuple[State, Symbol], Formula] = {}
        for (q, symbol), formula in formulas.items():
            if q not in known:
                msg = f"formula for unknown state {q!r}"
                raise StateMismatchError(msg)
            if symbol not in signature:
                msg = f"formula on {symbol!r}, which is not in the alphabet"
                raise AlphabetMismatchError(msg)
            rank = signature[symbol]
            cleaned = []
            for conjunction in formula:
                literals = tuple((int(d), p) for d, p in conjunction)
                for d, p in literals:
                    if not 1 <= d <= rank:
                        msg = f"direction {d} in the formula of ({q!r}, {format_symbol(symbol)}) exceeds rank {rank}"
                        raise RankMismatchError(msg)
                    if p not in known:
                        msg = f"formula of ({q!r}, {format_symbol(symbol)}) uses unknown state {p!r}"
                        raise StateMismatchError(msg)
                cleaned.append(literals)
            self.formulas[(q, symbol)] = tuple(cleaned)

    def formula(self, state: State, symbol: Symbol) -> Formula:
        return self.formulas.get((state, symbol), FALSE)

    @property
    def num_colors(self) -> int:
        largest = max(self.colors.values(), default=1)
        return largest if largest % 2 else largest + 1

    @property
    def key(self) -> tuple:
        return (
            self.signature,
            frozenset(self.states),
            frozenset((k, v) for k, v in self.formulas.items() if v),
            frozenset(self.colors.items()),
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParityATA):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"ParityATA(states={len(self.states)}, formulas={len(self.formulas)})"


def from_nta(automaton: ParityNTA) -> ParityATA:
    """Each transition becomes the disjunct (1, p1) & ... & (k, pk)."""
    formulas: dict[tuple[State, Symbol], list[Conjunction]] = {}
    for t in automaton.transitions:
        formulas.setdefault((t.state, t.symbol), []).append(tuple(enumerate(t.children, 1)))
    return ParityATA(automaton.signature, automaton.states, formulas, automaton.colors)


def _normalize(disjuncts: Iterable[Iterable[Literal]]) -> Formula:
    """Deduplicates literals and drops disjuncts absorbed by smaller ones."""
    sets = {frozenset(d) for d in disjuncts}
    minimal = [d for d in sets if not any(other < d for other in sets)]
    ordered = [tuple(sorted(d, key=value_key)) for d in minimal]
    return tuple(sorted(ordered, key=lambda d: (len(d), value_key(d))))


def dual_formula(formula: Formula) -> Formula:
    """Swaps conjunction and disjunction and distributes back into normal form."""
    return _normalize(cartesian(*formula))


def dual(automaton: ParityATA) -> ParityATA:
    """The dual automaton; its language at q is the complement of the original's.

    Colors shift by one.

    """
    formulas = {
        (q, symbol): dual_formula(automaton.formula(q, symbol))
        for q in automaton.states
        for symbol in automaton.signature
    }
    colors = {q: c + 1 for q, c in automaton.colors.items()}
    return ParityATA(automaton.signature, automaton.states, formulas, colors)


def conjunction(parts: Sequence[tuple[ParityATA, State]]) -> tuple[ParityATA, State]:
    """One automaton whose start state accepts the intersection of all parts.

    Raises:
        AlphabetMismatchError: If the parts use different alphabets.

    """
    if not parts:
        msg = "a conjunction needs at least one part"
        raise ValueError(msg)
    signature = parts[0][0].signature
    for automaton, _ in parts[1:]:
        if automaton.signature != signature:
            msg = f"alphabets differ: {signature!r} and {automaton.signature!r}"
            raise AlphabetMismatchError(msg)
    start = ("and",)
    states: list[State] = [start]
    formulas: dict[tuple[State, Symbol], Formula] = {}
    colors: dict[State, int] = {}
    for k, (automaton, _) in enumerate(parts):
        for q in automaton.states:
            states.append((k, q))
            colors[(k, q)] = automaton.colors[q]
        for (q, symbol), formula in automaton.formulas.items():
            formulas[((k, q), symbol)] = tuple(
                tuple((d, (k, p)) for d, p in disjunct) for disjunct in formula
            )
    colors[start] = max(colors.values(), default=1)
    for symbol in signature:
        pieces = [formulas.get(((k, p), symbol), FALSE) for k, (_, p) in enumerate(parts)]
        formulas[(start, symbol)] = tuple(
            tuple(literal for disjunct in choice for literal in disjunct)
            for choice in cartesian(*pieces)
        )
    return ParityATA(signature, states, formulas, colors), start


def member_rational_game(automaton: ParityATA, g: TreeGraph | Tree, state: State) -> bool:
    """Membership decided by the acceptance game on the finite product arena."""
    if isinstance(g, Tree):
        g = TreeGraph.from_tree(g)
    arena, root = acceptance_arena(
        g,
        state,
        lambda symbol, q: automaton.formula(q, symbol),
        automaton.colors.__getitem__,
    )
    return root in solve(arena).win0


member = member_rational_game


class _Threads:
    """The Büchi automaton guessing a thread that violates the parity condition.

    A waiting state (i, 0) follows the thread of automaton state i; a committed
    state (i, c) for odd c has promised that from now on no color below c occurs,
    and is accepting when state i has color exactly c.

    """

    def __init__(self, automaton: ParityATA):
        self.index = {q: i for i, q in enumerate(automaton.states)}
        self.color = [automaton.colors[q] for q in automaton.states]
        self.odd = sorted({c for c in self.color if c % 2})

    def entry(self, i: int) -> set[tuple[int, int]]:
        return {(i, 0)} | {(i, c) for c in self.odd if c <= self.color[i]}

    def post(self, label: Iterable[tuple[int, int]], relation: frozenset) -> set:
        successors: set[tuple[int, int]] = set()
        for i, c in label:
            for source, target in relation:
                if source != i:
                    continue
                if c == 0:
                    successors |= self.entry(target)
                elif self.color[target] >= c:
                    successors.add((target, c))
        return successors

    def accepting(self, state: tuple[int, int]) -> bool:
        i, c = state
        return c > 0 and self.color[i] == c

    @property
    def size(self) -> int:
        return len(self.color) * (len(self.odd) + 1)


@stage("ata-to-nta")
def ata_to_nta(
    automaton: ParityATA, state: State, *, budget: Budget | None = None
) -> tuple[ParityNTA, State]:
    """A nondeterministic automaton with the same language at the returned start state.

    The automaton guesses, at every node, one disjunct per active thread (a slice of
    a positional strategy of Prover). The threads running down a path form a word
    over relations; a Safra determinization of the automaton looking for one bad
    thread, with colors shifted by one, checks that no thread is bad.

    Raises:
        ResourceBudgetExceeded: If the state count passes the budget.

    """
    budget = resolve_budget(budget)
    threads = _Threads(automaton)
    safra = SafraDeterminizer(threads.post, threads.accepting, threads.size, key=lambda s: s)
    states = automaton.states
    signature = automaton.signature
    initial_tree = safra.initial(threads.entry(threads.index[state]))
    start = (initial_tree, safra.neutral_color)
    moves_cache: dict = {}

    def moves(tree, symbol: Symbol) -> list[tuple]:
        cached = moves_cache.get((tree, symbol))
        if cached is not None:
            return cached
        rank = signature[symbol]
        if tree is None:
            result = [tuple((None, safra.dead_color) for _ in range(rank))]
            moves_cache[(tree, symbol)] = result
            return result
        active = sorted({i for i, c in tree[1] if c == 0})
        options = [automaton.formula(states[i], symbol) for i in active]
        result_set = set()
        for choice in cartesian(*options):
            relations = [set() for _ in range(rank)]
            for i, disjunct in zip(active, choice):
                for direction, p in disjunct:
                    relations[direction - 1].add((i, threads.index[p]))
            result_set.add(tuple(safra.step(tree, frozenset(r)) for r in relations))
        result = sorted(result_set, key=repr)
        moves_cache[(tree, symbol)] = result
        return result

    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        current = queue.popleft()
        for symbol in signature:
            for children in moves(current[0], symbol):
                transitions.append(Transition(current, symbol, children))
                for child in children:
                    if child not in seen:
                        seen.add(child)
                        queue.append(child)
                        budget.check_states("ata-to-nta", len(seen))
    colors = {q: q[1] + 1 for q in seen}
    result = ParityNTA(signature, seen, transitions, colors)
    logger.debug(f"Simulation of {len(states)} alternating states gave {len(seen)} states.")
    trimmed = trim(result, [start])
    return normalized(trimmed, start)


def format_formula(formula: Formula) -> str:
    """Prints a formula as ``(1,p) & (2,q) | ...``, with ``true`` and ``false``."""
    if not formula:
        return "false"
    return " | ".join(
        " & ".join(f"({d},{p})" for d, p in disjunct) if disjunct else "true"
        for disjunct in formula
    )


def sorted_formulas(automaton: ParityATA) -> list[tuple[State, Symbol, Formula]]:
    return [
        (q, symbol, automaton.formulas[(q, symbol)])
        for q, symbol in sorted(
            automaton.formulas, key=lambda pair: (value_key(pair[0]), symbol_key(pair[1]))
        )
    ]
