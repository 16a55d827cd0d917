"""Parity nondeterministic top-down tree automata."""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from src.core.config import get_settings
from src.core.errors import AlphabetMismatchError, ColorRangeError, RankMismatchError, StateMismatchError
from src.games.arena import PROVER, SPOILER, Arena
from src.games.solver import solve
from src.trees.graphs import TreeGraph
from src.trees.symbols import Signature, Symbol, symbol_key, value_key, with_holes
from src.trees.terms import Position, Tree, _compositions, format_symbol

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

State = Hashable
Run = dict[Position, State]
Literal = tuple[int, State]


class Transition(NamedTuple):
    state: State
    symbol: Symbol
    children: tuple[State, ...]


def transition_key(transition: Transition) -> tuple:
    return (value_key(transition.state), symbol_key(transition.symbol), value_key(transition.children))


class ParityNTA:
    """A parity tree automaton without a fixed start state.

    A run accepts when, on every infinite path, the least color seen infinitely
    often is even. Languages are taken per state, ``L(A, p)``.

    """

    def __init__(
        self,
        signature: Signature,
        states: Iterable[State],
        transitions: Iterable[Transition | tuple],
        colors: Mapping[State, int],
    ):
        self.signature = signature
        self.states = tuple(sorted(set(states), key=value_key))
        self.colors = {q: colors[q] for q in self.states if q in colors}
        known = set(self.states)
        for q in self.states:
            if q not in self.colors:
                msg = f"state {q!r} has no color"
                raise ColorRangeError(msg)
            if self.colors[q] < 1:
                msg = f"state {q!r} has color {self.colors[q]}, colors start at 1"
                raise ColorRangeError(msg)
        cleaned = set()
        for item in transitions:
            transition = Transition(item[0], item[1], tuple(item[2]))
            if transition.symbol not in signature:
                msg = f"transition on {transition.symbol!r}, which is not in the alphabet"
                raise AlphabetMismatchError(msg)
            if len(transition.children) != signature[transition.symbol]:
                msg = (
                    f"transition {transition.state!r} -{format_symbol(transition.symbol)}-> "
                    f"has {len(transition.children)} targets, rank is {signature[transition.symbol]}"
                )
                raise RankMismatchError(msg)
            unknown = [q for q in (transition.state, *transition.children) if q not in known]
            if unknown:
                msg = f"transition uses unknown state {unknown[0]!r}"
                raise StateMismatchError(msg)
            cleaned.add(transition)
        self.transitions = tuple(sorted(cleaned, key=transition_key))
        self._moves: dict[tuple[State, Symbol], list[tuple[State, ...]]] = defaultdict(list)
        for transition in self.transitions:
            self._moves[(transition.state, transition.symbol)].append(transition.children)

    def moves(self, state: State, symbol: Symbol) -> list[tuple[State, ...]]:
        return self._moves.get((state, symbol), [])

    @property
    def num_colors(self) -> int:
        """|C|: the largest color rounded up to an odd number."""
        largest = max(self.colors.values(), default=1)
        return largest if largest % 2 else largest + 1

    def color_parity(self) -> str | None:
        """'even' or 'odd' when all colors share a parity, else None."""
        parities = {c % 2 for c in self.colors.values()}
        if parities == {0}:
            return "even"
        if parities <= {1}:
            return "odd"
        return None

    @property
    def key(self) -> tuple:
        return (
            self.signature,
            frozenset(self.states),
            frozenset(self.transitions),
            frozenset(self.colors.items()),
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParityNTA):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __len__(self) -> int:
        return len(self.states)

    def __repr__(self) -> str:
        return f"ParityNTA(states={len(self.states)}, transitions={len(self.transitions)})"


def extend_signature(automaton: ParityNTA, signature: Signature) -> ParityNTA:
    """The same automaton over a larger alphabet; new symbols get no transitions."""
    if automaton.signature == signature:
        return automaton
    return ParityNTA(
        automaton.signature | signature, automaton.states, automaton.transitions, automaton.colors
    )


def rename(automaton: ParityNTA, mapping: Callable[[State], State]) -> ParityNTA:
    return ParityNTA(
        automaton.signature,
        [mapping(q) for q in automaton.states],
        [Transition(mapping(t.state), t.symbol, tuple(mapping(c) for c in t.children))
         for t in automaton.transitions],
        {mapping(q): c for q, c in automaton.colors.items()},
    )


def bottom_up_states(automaton: ParityNTA, t: Tree) -> frozenset:
    """The states at which the finite tree t has a run."""
    memo: dict[Tree, frozenset] = {}

    def visit(node: Tree) -> frozenset:
        if node in memo:
            return memo[node]
        below = [visit(child) for child in node.children]
        result = frozenset(
            q
            for q in automaton.states
            for children in automaton.moves(q, node.symbol)
            if all(c in s for c, s in zip(children, below))
        )
        memo[node] = result
        return result

    return visit(t)


def member_finite(automaton: ParityNTA, t: Tree, state: State) -> bool:
    return state in bottom_up_states(automaton, t)


def runs_finite(automaton: ParityNTA, t: Tree, state: State) -> Iterator[Run]:
    """Lazily enumerates all runs of t starting in the given state."""
    memo: dict[Tree, frozenset] = {}

    def viable(node: Tree) -> frozenset:
        if node not in memo:
            below = [viable(child) for child in node.children]
            memo[node] = frozenset(
                q
                for q in automaton.states
                for children in automaton.moves(q, node.symbol)
                if all(c in s for c, s in zip(children, below))
            )
        return memo[node]

    def runs(node: Tree, u: Position, q: State) -> Iterator[Run]:
        if q not in viable(node):
            return
        for children in automaton.moves(q, node.symbol):
            if not all(c in viable(child) for c, child in zip(children, node.children)):
                continue
            parts = [
                list(runs(child, u + (i,), c))
                for i, (child, c) in enumerate(zip(node.children, children), 1)
            ]
            for combination in cartesian(*parts):
                run = {u: q}
                for part in combination:
                    run.update(part)
                yield run

    yield from runs(t, (), state)


def acceptance_arena(
    graph: TreeGraph,
    start: State,
    options: Callable[[Symbol, State], Sequence[Sequence[Literal]]],
    color: Callable[[State], int],
) -> tuple[Arena, tuple]:
    """The acceptance game of a rational tree.

    Prover at (node, q) picks one option, a list of (direction, state) pairs;
    Spoiler at (node, q, j) picks one pair and moves to (successor, state).
    Duplicate pairs give parallel edges.

    """
    root = (graph.root, start)
    vertices: dict[tuple, tuple[int, int]] = {}
    edges: list[tuple[tuple, tuple]] = []
    queue = deque([root])
    vertices[root] = (PROVER, color(start))
    while queue:
        node, q = queue.popleft()
        for j, option in enumerate(options(graph.labels[node], q)):
            choice = (node, q, j)
            vertices[choice] = (SPOILER, color(q))
            edges.append(((node, q), choice))
            for direction, p in option:
                target = (graph.successors[node][direction - 1], p)
                if target not in vertices:
                    vertices[target] = (PROVER, color(p))
                    queue.append(target)
                edges.append((choice, target))
    return Arena.build(vertices, edges), root


def nta_options(automaton: ParityNTA) -> Callable[[Symbol, State], list[list[Literal]]]:
    def options(symbol: Symbol, q: State) -> list[list[Literal]]:
        return [list(enumerate(children, 1)) for children in automaton.moves(q, symbol)]

    return options


def member_rational(automaton: ParityNTA, g: TreeGraph | Tree, state: State) -> bool:
    """Membership of a rational tree, decided by the product parity game."""
    if isinstance(g, Tree):
        return member_finite(automaton, g, state)
    arena, root = acceptance_arena(g, state, nta_options(automaton), automaton.colors.__getitem__)
    return root in solve(arena).win0


def member(automaton: ParityNTA, t: Tree | TreeGraph, state: State) -> bool:
    if isinstance(t, Tree):
        return member_finite(automaton, t, state)
    return member_rational(automaton, t, state)


def emptiness_arena(automaton: ParityNTA) -> Arena:
    """Prover at (q,) picks a transition, Spoiler at (q, k) picks a child state."""
    vertices: dict[tuple, tuple[int, int]] = {}
    edges: list[tuple[tuple, tuple]] = []
    for q in automaton.states:
        vertices[(q,)] = (PROVER, automaton.colors[q])
    for k, transition in enumerate(automaton.transitions):
        choice = (transition.state, k)
        vertices[choice] = (SPOILER, automaton.colors[transition.state])
        edges.append(((transition.state,), choice))
        for child in transition.children:
            edges.append((choice, (child,)))
    return Arena.build(vertices, edges)


def productive_states(automaton: ParityNTA) -> frozenset:
    """States with a nonempty language."""
    solution = solve(emptiness_arena(automaton))
    return frozenset(v[0] for v in solution.win0 if len(v) == 1)


def is_empty(automaton: ParityNTA, state: State) -> bool:
    return state not in productive_states(automaton)


def witness(automaton: ParityNTA, state: State) -> TreeGraph | None:
    """A rational tree in L(A, state) read off Prover's positional strategy, or None."""
    arena = emptiness_arena(automaton)
    solution = solve(arena)
    if (state,) not in solution.win0:
        return None
    index: dict[State, int] = {}
    order: list[State] = []
    queue = deque([state])
    index[state] = 0
    order.append(state)
    labels: list[Symbol] = []
    successors: list[list[int]] = []
    while queue:
        q = queue.popleft()
        choice = arena.target(solution.strategy0[(q,)])
        transition = automaton.transitions[choice[1]]
        targets = []
        for child in transition.children:
            if child not in index:
                index[child] = len(order)
                order.append(child)
                queue.append(child)
            targets.append(index[child])
        labels.append(transition.symbol)
        successors.append(targets)
    return TreeGraph.build(labels, successors, 0)


def _require_same_signature(first: ParityNTA, second: ParityNTA) -> None:
    if first.signature != second.signature:
        msg = f"alphabets differ: {first.signature!r} and {second.signature!r}"
        raise AlphabetMismatchError(msg)


def union(first: ParityNTA, p1: State, second: ParityNTA, p2: State) -> tuple[ParityNTA, State]:
    """L(first, p1) | L(second, p2) through a fresh start state."""
    _require_same_signature(first, second)
    start = ("union",)
    transitions = [
        Transition((side, t.state), t.symbol, tuple((side, c) for c in t.children))
        for side, automaton in ((0, first), (1, second))
        for t in automaton.transitions
    ]
    for side, automaton, p in ((0, first, p1), (1, second, p2)):
        for t in automaton.transitions:
            if t.state == p:
                transitions.append(Transition(start, t.symbol, tuple((side, c) for c in t.children)))
    colors = {(0, q): c for q, c in first.colors.items()}
    colors.update({(1, q): c for q, c in second.colors.items()})
    colors[start] = max(colors.values(), default=1)
    result = ParityNTA(first.signature, colors, transitions, colors)
    return trim(result, [start]), start


def product(first: ParityNTA, p1: State, second: ParityNTA, p2: State) -> tuple[ParityNTA, State]:
    """Intersection by the plain product, valid when one side has colors of a single parity.

    Raises:
        AlphabetMismatchError: If the alphabets differ.
        ValueError: If neither side has single-parity colors.

    """
    _require_same_signature(first, second)
    second_parity = second.color_parity()
    first_parity = first.color_parity()
    if second_parity == "even":
        color = lambda q1, q2: first.colors[q1]  # noqa: E731
    elif first_parity == "even":
        color = lambda q1, q2: second.colors[q2]  # noqa: E731
    elif "odd" in (first_parity, second_parity):
        color = lambda q1, q2: 1  # noqa: E731
    else:
        msg = "plain products need one operand with colors of a single parity"
        raise ValueError(msg)
    start = (p1, p2)
    states = {start}
    queue = deque([start])
    transitions = []
    while queue:
        q1, q2 = queue.popleft()
        for symbol in first.signature:
            for c1 in first.moves(q1, symbol):
                for c2 in second.moves(q2, symbol):
                    children = tuple(zip(c1, c2))
                    transitions.append(Transition((q1, q2), symbol, children))
                    for child in children:
                        if child not in states:
                            states.add(child)
                            queue.append(child)
    colors = {(q1, q2): color(q1, q2) for q1, q2 in states}
    result = ParityNTA(first.signature, states, transitions, colors)
    logger.debug(f"Product has {len(result.states)} states.")
    return trim(result, [start]), start


def add_holes(automaton: ParityNTA, count: int) -> ParityNTA:
    """B_H: every hole 1..count is accepted at every state."""
    signature = with_holes(automaton.signature, count)
    transitions = list(automaton.transitions)
    transitions.extend(
        Transition(q, i, ()) for q in automaton.states for i in range(1, count + 1)
    )
    return ParityNTA(signature, automaton.states, transitions, automaton.colors)


def relabel_project(
    automaton: ParityNTA,
    mapping: Mapping[Symbol, Symbol] | Callable[[Symbol], Symbol],
    target: Signature | None = None,
) -> ParityNTA:
    """Relabels every transition symbol; the language is the position-wise image.

    Symbols the mapping does not name keep their label.

    Raises:
        RankMismatchError: If a symbol is mapped onto a symbol of another rank.

    """
    lookup = mapping if callable(mapping) else (lambda s: mapping.get(s, s))
    ranks: dict[Symbol, int] = dict(target.items()) if target is not None else {}
    for symbol in automaton.signature:
        image = lookup(symbol)
        rank = automaton.signature[symbol]
        if ranks.setdefault(image, rank) != rank:
            msg = f"symbol {symbol!r} of rank {rank} mapped onto {image!r} of rank {ranks[image]}"
            raise RankMismatchError(msg)
    transitions = [Transition(t.state, lookup(t.symbol), t.children) for t in automaton.transitions]
    return ParityNTA(Signature(ranks), automaton.states, transitions, automaton.colors)


def trim(automaton: ParityNTA, starts: Iterable[State]) -> ParityNTA:
    """Drops unproductive transitions and states unreachable from the starts."""
    starts = list(starts)
    productive = productive_states(automaton)
    useful: dict[State, list[Transition]] = defaultdict(list)
    for t in automaton.transitions:
        if t.state in productive and all(c in productive for c in t.children):
            useful[t.state].append(t)
    reached = set(starts)
    queue = deque(starts)
    kept = []
    while queue:
        q = queue.popleft()
        for t in useful[q]:
            kept.append(t)
            for child in t.children:
                if child not in reached:
                    reached.add(child)
                    queue.append(child)
    return ParityNTA(
        automaton.signature, reached, kept, {q: automaton.colors[q] for q in reached}
    )


def universal(signature: Signature) -> tuple[ParityNTA, State]:
    transitions = [Transition("all", f, ("all",) * signature[f]) for f in signature]
    return ParityNTA(signature, ["all"], transitions, {"all": 2}), "all"


def empty_automaton(signature: Signature) -> tuple[ParityNTA, State]:
    return ParityNTA(signature, ["none"], [], {"none": 1}), "none"


def from_trees(signature: Signature, trees: Iterable[Tree | TreeGraph]) -> tuple[ParityNTA, State]:
    """An automaton accepting exactly the given finite or rational trees."""
    start = ("start",)
    states: list[State] = [start]
    transitions = []
    for k, item in enumerate(trees):
        graph = TreeGraph.from_tree(item) if isinstance(item, Tree) else item
        for node, label in enumerate(graph.labels):
            states.append((k, node))
            transitions.append(
                Transition((k, node), label, tuple((k, t) for t in graph.successors[node]))
            )
        root = graph.root
        transitions.append(
            Transition(start, graph.labels[root], tuple((k, t) for t in graph.successors[root]))
        )
    colors = {q: 2 for q in states}
    return ParityNTA(signature, states, transitions, colors), start


def normalized(automaton: ParityNTA, start: State) -> tuple[ParityNTA, int]:
    """Renames states to 0, 1, ... in breadth-first order from the start."""
    outgoing: dict[State, list[Transition]] = defaultdict(list)
    for t in automaton.transitions:
        outgoing[t.state].append(t)
    index = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for t in outgoing[q]:
            for child in t.children:
                if child not in index:
                    index[child] = len(index)
                    queue.append(child)
    for q in automaton.states:
        index.setdefault(q, len(index))
    return rename(automaton, index.__getitem__), 0


def accepted_trees(automaton: ParityNTA, state: State, max_size: int) -> list[Tree]:
    """Finite trees in L(A, state) with at most max_size nodes, smallest first."""
    table: dict[tuple[State, int], set[Tree]] = defaultdict(set)
    for size in range(1, max_size + 1):
        for t in automaton.transitions:
            rank = len(t.children)
            if rank == 0:
                if size == 1:
                    table[(t.state, 1)].add(Tree(t.symbol))
                continue
            for split in _compositions(size - 1, rank):
                pools = [table[(c, part)] for c, part in zip(t.children, split)]
                for children in cartesian(*pools):
                    table[(t.state, size)].add(Tree(t.symbol, tuple(children)))
    found = []
    for size in range(1, max_size + 1):
        found.extend(sorted(table[(state, size)], key=str))
    return found


def to_dot(automaton: ParityNTA, start: State | None = None) -> str:
    """Serializes an automaton to DOT; transitions of rank above one get a junction node."""
    names = {q: f"q{i}" for i, q in enumerate(automaton.states)}
    lines = ["digraph automaton {"]
    for q in automaton.states:
        shape = "doublecircle" if q == start else "circle"
        label = f"{q} : {automaton.colors[q]}".replace('"', "'")
        lines.append(f'  {names[q]} [shape={shape}, label="{label}"];')
    for k, t in enumerate(automaton.transitions):
        symbol = format_symbol(t.symbol).replace('"', "'")
        if len(t.children) == 1:
            lines.append(f'  {names[t.state]} -> {names[t.children[0]]} [label="{symbol}"];')
            continue
        junction = f"t{k}"
        lines.append(f'  {junction} [shape=point, xlabel="{symbol}"];')
        lines.append(f"  {names[t.state]} -> {junction};")
        for direction, child in enumerate(t.children, 1):
            lines.append(f'  {junction} -> {names[child]} [label="{direction}"];')
    lines.append("}")
    return "\n".join(lines)
