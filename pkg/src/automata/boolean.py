"""Intersection, complement and mixed Boolean combinations of parity tree automata."""

from __future__ import annotations

import logging
from typing import Sequence

from src.automata.ata import ata_to_nta, conjunction, dual, from_nta
from src.automata.nta import ParityNTA, State, product, universal
from src.core.budget import Budget, resolve_budget, stage
from src.core.config import get_settings
from src.core.errors import AlphabetMismatchError

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

Language = tuple[ParityNTA, State]


@stage("intersect")
def intersect(
    first: ParityNTA, p1: State, second: ParityNTA, p2: State, *, budget: Budget | None = None
) -> Language:
    """L(first, p1) & L(second, p2).

    A plain product suffices when one side has colors of a single parity; otherwise
    the two languages are conjoined as an alternating automaton and simulated back.

    """
    return boolean_combination([(first, p1), (second, p2)], [], budget=budget)


def intersect_all(parts: Sequence[Language], *, budget: Budget | None = None) -> Language:
    return boolean_combination(parts, [], budget=budget)


@stage("complement")
def complement(automaton: ParityNTA, state: State, *, budget: Budget | None = None) -> Language:
    """An automaton for every tree over the alphabet that L(automaton, state) misses."""
    if not automaton.transitions:
        return universal(automaton.signature)
    return boolean_combination([], [(automaton, state)], budget=budget)


def boolean_combination(
    positive: Sequence[Language],
    negative: Sequence[Language],
    *,
    budget: Budget | None = None,
) -> Language:
    """The trees in every positive language and in no negative one.

    Operands with single-parity colors join through plain products. All other
    operands, and the duals of the negative ones, form one alternating conjunction
    that is simulated back in a single step.

    Raises:
        AlphabetMismatchError: If the operands use different alphabets.

    """
    budget = resolve_budget(budget)
    operands = [*positive, *negative]
    if not operands:
        msg = "a Boolean combination needs at least one operand"
        raise ValueError(msg)
    signature = operands[0][0].signature
    if any(automaton.signature != signature for automaton, _ in operands):
        msg = "all operands need the same alphabet"
        raise AlphabetMismatchError(msg)
    weak = [(a, p) for a, p in positive if a.color_parity() is not None]
    strong = [(from_nta(a), p) for a, p in positive if a.color_parity() is None]
    strong.extend((dual(from_nta(a)), p) for a, p in negative)
    if len(strong) > 1:
        combined = ata_to_nta(*conjunction(strong), budget=budget)
    elif strong and negative:
        combined = ata_to_nta(*strong[0], budget=budget)
    elif strong:
        combined = next((a, p) for a, p in positive if a.color_parity() is None)
    else:
        combined = weak.pop(0)
    for automaton, p in weak:
        combined = product(combined[0], combined[1], automaton, p)
        budget.check_states("intersect", len(combined[0]))
    logger.debug(
        f"Combined {len(positive)} positive and {len(negative)} negative languages "
        f"into {len(combined[0])} states."
    )
    return combined
