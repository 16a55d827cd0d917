"""Profile classes and the enumeration of realizable profiles."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from src.automata.boolean import Language, boolean_combination
from src.automata.nta import ParityNTA, State, member_rational, universal, witness
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.profiles.tasks import Profile, ProfileContext, Task, profile_sort_key, task_automaton
from src.trees.graphs import TreeGraph

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)


@dataclass(frozen=True)
class ProfileClass:
    """A realizable profile with an automaton for its class and one member tree."""

    profile: Profile
    automaton: ParityNTA
    state: State
    witness: TreeGraph


class TaskAutomata:
    """Task automata built once per task."""

    def __init__(self, ctx: ProfileContext):
        self.ctx = ctx
        self._cache: dict[Task, Language] = {}

    def __getitem__(self, task: Task) -> Language:
        if task not in self._cache:
            self._cache[task] = task_automaton(self.ctx, task)
        return self._cache[task]


def maximal_nonmembers(ctx: ProfileContext, profile: Profile) -> list[Task]:
    """The maximal tasks outside the upward closure of the profile."""
    found: list[Task] = []
    for state in ctx.states:
        top = ctx.top_task(state)
        if not profile.contains(ctx, top):
            found.append(top)
            continue
        outside = [
            task for task in ctx.all_tasks()
            if task.state == state and not profile.contains(ctx, task)
        ]
        found.extend(
            task for task in outside
            if not any(other != task and ctx.task_leq(task, other) for other in outside)
        )
    return found


@stage("profile-class")
def profile_class(
    ctx: ProfileContext,
    profile: Profile,
    *,
    tasks: TaskAutomata | None = None,
    budget: Budget | None = None,
) -> Language:
    """An automaton over Σ∪H for the trees whose profile is exactly the given one."""
    tasks = tasks or TaskAutomata(ctx)
    positive = [tasks[task] for task in profile.tasks]
    negative = [tasks[task] for task in maximal_nonmembers(ctx, profile)]
    if not positive:
        positive = [universal(ctx.extended.signature)]
    return boolean_combination(positive, negative, budget=budget)


@dataclass
class _Block:
    """Trees agreeing on the decided tasks; the witness is one of them."""

    positive: list[Task]
    negative: list[Task]
    witness: TreeGraph

    def forced(self, ctx: ProfileContext, task: Task) -> bool:
        return (
            any(ctx.task_leq(other, task) for other in self.positive)
            or any(ctx.task_leq(task, other) for other in self.negative)
        )

    def extended(self, task: Task, holds: bool, witness: TreeGraph) -> _Block:
        if holds:
            return _Block([*self.positive, task], list(self.negative), witness)
        return _Block(list(self.positive), [*self.negative, task], witness)


@stage("realizable-profiles")
def realizable_profiles(
    ctx: ProfileContext,
    within: Language | None = None,
    *,
    budget: Budget | None = None,
) -> dict[Profile, ProfileClass]:
    """The profiles realized by some tree, optionally only by trees of a given language.

    The trees are split task by task. Every block keeps a member tree; a task is
    decided for the whole block when the side its member tree is not on is empty,
    otherwise the block splits in two. Tasks implied by upward closure are skipped.

    Raises:
        ResourceBudgetExceeded: If more blocks than the profile budget arise.

    """
    budget = resolve_budget(budget)
    universe = within if within is not None else universal(ctx.extended.signature)
    start = witness(*universe)
    if start is None:
        return {}
    tasks = TaskAutomata(ctx)
    order = list(ctx.all_tasks())
    pending = [_Block([], [], start)]
    finished: list[_Block] = []
    while pending:
        block = pending.pop()
        task = next((t for t in order if not block.forced(ctx, t)), None)
        if task is None:
            finished.append(block)
            continue
        automaton, state = tasks[task]
        holds = member_rational(automaton, block.witness, state)
        trial = block.extended(task, not holds, block.witness)
        other = witness(*_language(ctx, universe, trial, tasks, budget))
        if other is None:
            if holds:
                block.positive.append(task)
            else:
                block.negative.append(task)
            pending.append(block)
            continue
        pending.append(block.extended(task, holds, block.witness))
        pending.append(block.extended(task, not holds, other))
        budget.check_profiles("realizable-profiles", len(pending) + len(finished))
    result: dict[Profile, ProfileClass] = {}
    for block in finished:
        profile = Profile(ctx, block.positive)
        automaton, state = _language(ctx, universe, block, tasks, budget)
        result[profile] = ProfileClass(profile, automaton, state, block.witness)
    logger.info(f"Found {len(result)} realizable profiles.")
    return dict(sorted(result.items(), key=lambda item: profile_sort_key(item[0])))


def _language(
    ctx: ProfileContext,
    universe: Language,
    block: _Block,
    tasks: TaskAutomata,
    budget: Budget,
) -> Language:
    positive = [universe, *(tasks[t] for t in ctx.minimal(block.positive))]
    negative = [
        tasks[t] for t in block.negative
        if not any(other != t and ctx.task_leq(t, other) for other in block.negative)
    ]
    return boolean_combination(positive, negative, budget=budget)
