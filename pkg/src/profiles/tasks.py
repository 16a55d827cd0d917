"""Tasks, the best order on colors, task satisfaction and the profiles of concrete trees."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Iterator, Mapping, Sequence

from src.automata.nta import ParityNTA, State, Transition, add_holes, member_rational, runs_finite, trim
from src.core.config import get_settings
from src.core.errors import ColorRangeError, ProfileError, StateMismatchError
from src.trees.graphs import TreeGraph
from src.trees.symbols import is_hole, value_key
from src.trees.terms import Position, Tree, contains_bottom, format_symbol, labelled_positions

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)


def best_rank(c: int, num_colors: int) -> int:
    """Position of a color in the best order: 0, 2, 4, ..., then odd colors descending, 1 last.

    Raises:
        ColorRangeError: If c is outside 0..num_colors.

    """
    if not 0 <= c <= num_colors:
        msg = f"color {c} is outside 0..{num_colors}"
        raise ColorRangeError(msg)
    if c % 2 == 0:
        return c // 2
    return (num_colors + 1) // 2 + (num_colors - c) // 2


def best_leq(c1: int, c2: int, num_colors: int) -> bool:
    return best_rank(c1, num_colors) <= best_rank(c2, num_colors)


def best_sup(values: Iterable[int], num_colors: int) -> int:
    """The supremum in the best order; 0 for no values."""
    return max(values, key=lambda c: best_rank(c, num_colors), default=0)


@dataclass(frozen=True)
class Task:
    """A state p and per hole i the bounds psi_i(q), listed in the context's state order.

    A bound of 0 forbids hole-i leaves reached in q.

    """

    state: State
    bounds: tuple[tuple[int, ...], ...]

    def bound(self, hole: int, index: int) -> int:
        return self.bounds[hole - 1][index]


@dataclass(frozen=True)
class ProfileContext:
    """The automaton B over Σ, its hole extension B_H and the derived color data."""

    base: ParityNTA
    hole_count: int

    @cached_property
    def extended(self) -> ParityNTA:
        return add_holes(self.base, self.hole_count)

    @cached_property
    def states(self) -> tuple[State, ...]:
        return self.base.states

    @cached_property
    def index(self) -> dict[State, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def num_colors(self) -> int:
        return self.base.num_colors

    @cached_property
    def colors(self) -> tuple[int, ...]:
        """χ(Q), ascending."""
        return tuple(sorted(set(self.base.colors.values())))

    @cached_property
    def bound_values(self) -> tuple[int, ...]:
        """Values a bound can take, {0} and χ(Q), in best order."""
        return tuple(sorted({0, *self.colors}, key=self.rank))

    @property
    def holes(self) -> list[int]:
        return list(range(1, self.hole_count + 1))

    def rank(self, c: int) -> int:
        return best_rank(c, self.num_colors)

    def leq(self, c1: int, c2: int) -> bool:
        return self.rank(c1) <= self.rank(c2)

    def task(self, state: State, bounds: Mapping[tuple[int, State], int] | None = None) -> Task:
        """Builds a task from ``(hole, state) -> bound``; missing entries are 0."""
        bounds = bounds or {}
        return Task(
            state,
            tuple(tuple(bounds.get((i, q), 0) for q in self.states) for i in self.holes),
        )

    def task_leq(self, first: Task, second: Task) -> bool:
        if first.state != second.state:
            return False
        return all(
            self.leq(a, b)
            for row1, row2 in zip(first.bounds, second.bounds)
            for a, b in zip(row1, row2)
        )

    def task_weight(self, task: Task) -> int:
        return sum(self.rank(c) for row in task.bounds for c in row)

    def minimal(self, tasks: Iterable[Task]) -> list[Task]:
        """The minimal antichain of a task set, in canonical order."""
        unique = sorted(set(tasks), key=self.task_sort_key)
        kept: list[Task] = []
        for task in unique:
            if not any(self.task_leq(other, task) for other in kept):
                kept = [other for other in kept if not self.task_leq(task, other)]
                kept.append(task)
        return sorted(kept, key=self.task_sort_key)

    def task_sort_key(self, task: Task) -> tuple:
        return (self.index[task.state], self.task_weight(task), task.bounds)

    def all_tasks(self) -> Iterator[Task]:
        """Every task, lighter tasks first within each state."""
        cells = self.hole_count * len(self.states)
        for state in self.states:
            vectors = sorted(
                cartesian(self.bound_values, repeat=cells),
                key=lambda v: (sum(self.rank(c) for c in v), v),
            )
            for vector in vectors:
                yield Task(state, _rows(vector, len(self.states)))

    def top_task(self, state: State) -> Task:
        top = self.bound_values[-1]
        return Task(state, tuple((top,) * len(self.states) for _ in self.holes))


def _rows(vector: Sequence[int], width: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(vector[k : k + width]) for k in range(0, len(vector), width))


class Profile:
    """An upward-closed task set, stored as its minimal antichain."""

    __slots__ = ("tasks", "_hash")

    def __init__(self, ctx: ProfileContext, tasks: Iterable[Task] = ()):
        self.tasks: tuple[Task, ...] = tuple(ctx.minimal(tasks))
        self._hash = hash(self.tasks)

    def contains(self, ctx: ProfileContext, task: Task) -> bool:
        return any(ctx.task_leq(minimal, task) for minimal in self.tasks)

    @property
    def is_empty(self) -> bool:
        return not self.tasks

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Profile):
            return self.tasks == other.tasks
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.tasks)

    def __iter__(self) -> Iterator[Task]:
        return iter(self.tasks)

    def __repr__(self) -> str:
        return "Profile(" + "; ".join(map(repr, self.tasks)) + ")"


def profile_sort_key(profile: Profile) -> tuple:
    return (len(profile.tasks), value_key(profile.tasks))


def path_minima(run: Mapping[Position, State], t: Tree, colors: Mapping[State, int]) -> Iterator[tuple[Position, int, State, int]]:
    """Yields (position, hole, state, least color on the root path) for every hole leaf."""
    for u, node in labelled_positions(t):
        if is_hole(node.symbol):
            least = min(colors[run[u[:k]]] for k in range(len(u) + 1))
            yield u, node.symbol, run[u], least


def run_satisfies(
    ctx: ProfileContext,
    run: Mapping[Position, State],
    t: Tree,
    task: Task,
    colors: Mapping[State, int] | None = None,
) -> bool:
    """Whether every hole leaf's path minimum is best-below the task's bound for its state.

    Raises:
        StateMismatchError: If the run does not start in the task's state.

    """
    if run.get(()) != task.state:
        msg = f"run starts in {run.get(())!r}, task in {task.state!r}"
        raise StateMismatchError(msg)
    colors = colors if colors is not None else ctx.base.colors
    for _, i, q, least in path_minima(run, t, colors):
        if i > ctx.hole_count or q not in ctx.index:
            return False
        if not ctx.leq(least, task.bound(i, ctx.index[q])):
            return False
    return True


def minimal_task_of_run(
    ctx: ProfileContext,
    run: Mapping[Position, State],
    t: Tree,
    state: State,
    colors: Mapping[State, int] | None = None,
) -> Task:
    """The least task the run satisfies: per (hole, state) the best-supremum of the path minima."""
    colors = colors if colors is not None else ctx.base.colors
    found: dict[tuple[int, State], list[int]] = {}
    for _, i, q, least in path_minima(run, t, colors):
        found.setdefault((i, q), []).append(least)
    return ctx.task(state, {key: best_sup(values, ctx.num_colors) for key, values in found.items()})


def profile_finite(ctx: ProfileContext, t: Tree) -> Profile:
    """The profile of a finite tree, computed bottom-up over summary vectors.

    A summary maps each (hole, state) cell to the best-supremum of path minima below
    a node, 0 where no leaf is reached; only the best-minimal summaries are kept.

    """
    if contains_bottom(t):
        return Profile(ctx)
    width = len(ctx.states)
    cells = ctx.hole_count * width
    extended = ctx.extended
    memo: dict[Tree, dict[State, list[tuple[int, ...]]]] = {}

    def combine(vectors: Sequence[tuple[int, ...]], color: int) -> tuple[int, ...]:
        merged = []
        for k in range(cells):
            value = best_sup((v[k] for v in vectors), ctx.num_colors)
            merged.append(min(value, color) if value else 0)
        return tuple(merged)

    def prune(vectors: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
        kept: list[tuple[int, ...]] = []
        for v in sorted(vectors, key=lambda v: sum(ctx.rank(c) for c in v)):
            if not any(all(ctx.leq(a, b) for a, b in zip(w, v)) for w in kept):
                kept.append(v)
        return kept

    def visit(node: Tree) -> dict[State, list[tuple[int, ...]]]:
        if node in memo:
            return memo[node]
        below = [visit(child) for child in node.children]
        result: dict[State, list[tuple[int, ...]]] = {}
        for q in ctx.states:
            color = ctx.base.colors[q]
            if is_hole(node.symbol):
                if node.symbol <= ctx.hole_count:
                    vector = [0] * cells
                    vector[(node.symbol - 1) * width + ctx.index[q]] = color
                    result[q] = [tuple(vector)]
                continue
            found: set[tuple[int, ...]] = set()
            for children in extended.moves(q, node.symbol):
                pools = [below[j].get(c, []) for j, c in enumerate(children)]
                for choice in cartesian(*pools):
                    found.add(combine(choice, color) if choice else (0,) * cells)
            if found:
                result[q] = prune(found)
        memo[node] = result
        return result

    summaries = visit(t)
    tasks = [
        Task(q, _rows(vector, width))
        for q, vectors in summaries.items()
        for vector in vectors
    ]
    return Profile(ctx, tasks)


def profile_by_runs(ctx: ProfileContext, t: Tree) -> Profile:
    """The profile of a finite tree by enumerating every run; exponential, for cross-checks."""
    if contains_bottom(t):
        return Profile(ctx)
    tasks = [
        minimal_task_of_run(ctx, run, t, p)
        for p in ctx.states
        for run in runs_finite(ctx.extended, t, p)
    ]
    return Profile(ctx, tasks)


def task_automaton(ctx: ProfileContext, task: Task) -> tuple[ParityNTA, State]:
    """B_τ over Σ∪H: states (q, c) track the least color on the path so far.

    Accepts exactly the trees satisfying the task from (p, χ(p)).

    """
    base = ctx.base
    states = [(q, c) for q in ctx.states for c in ctx.colors]
    transitions = []
    for t in base.transitions:
        for c in ctx.colors:
            children = tuple((p, min(c, base.colors[p])) for p in t.children)
            transitions.append(Transition((t.state, c), t.symbol, children))
    for q in ctx.states:
        for c in ctx.colors:
            for i in ctx.holes:
                bound = task.bound(i, ctx.index[q])
                if bound and ctx.leq(c, bound):
                    transitions.append(Transition((q, c), i, ()))
    colors = {(q, c): base.colors[q] for q, c in states}
    automaton = ParityNTA(ctx.extended.signature, states, transitions, colors)
    start = (task.state, base.colors[task.state])
    return trim(automaton, [start]), start


def profile_rational(ctx: ProfileContext, g: TreeGraph | Tree) -> Profile:
    """The profile of a rational tree through membership in the task automata."""
    if isinstance(g, Tree):
        return profile_finite(ctx, g)
    found: list[Task] = []
    for task in ctx.all_tasks():
        if any(ctx.task_leq(other, task) for other in found):
            continue
        automaton, start = task_automaton(ctx, task)
        if member_rational(automaton, g, start):
            found.append(task)
    return Profile(ctx, found)


def profile_of(ctx: ProfileContext, t: Tree | TreeGraph) -> Profile:
    if isinstance(t, Tree):
        return profile_finite(ctx, t)
    return profile_rational(ctx, t)


def holes_of_profile(ctx: ProfileContext, profile: Profile) -> frozenset[int]:
    """The holes every tree of the profile contains.

    Raises:
        ProfileError: For the empty profile, whose trees may have any hole set.

    """
    if profile.is_empty:
        msg = "the empty profile does not determine a hole set"
        raise ProfileError(msg)
    return frozenset(
        i
        for i in ctx.holes
        if all(any(task.bound(i, k) for k in range(len(ctx.states))) for task in profile.tasks)
    )


def tree_signature(ctx: ProfileContext, t: Tree | TreeGraph) -> tuple[Profile, frozenset[int]]:
    """The profile of a tree together with the holes it actually uses."""
    if isinstance(t, Tree):
        used = frozenset(node.symbol for _, node in labelled_positions(t) if is_hole(node.symbol))
    else:
        used = frozenset(label for label in t.labels if is_hole(label))
    return profile_of(ctx, t), used


def format_task(ctx: ProfileContext, task: Task) -> str:
    """Prints ``task p | 1:q=2 ...`` listing the nonzero bounds."""
    cells = [
        f"{format_symbol(i)[1:]}:{q}={task.bound(i, k)}"
        for i in ctx.holes
        for k, q in enumerate(ctx.states)
        if task.bound(i, k)
    ]
    return f"task {task.state}" + (" | " + " ".join(cells) if cells else "")


def format_profile(ctx: ProfileContext, profile: Profile) -> list[str]:
    return [format_task(ctx, task) for task in profile.tasks]
