"""Resource budgets for the doubly exponential constructions."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable

from src.core.config import get_settings
from src.core.errors import ResourceBudgetExceeded

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)


@dataclass
class Budget:
    """Limits on states, candidates, profiles and wall-clock time.

    The clock starts when the budget is created, so one budget covers one
    request from end to end.

    """

    max_states: int
    max_candidates: int
    max_profiles: int
    max_seconds: float
    started: float = field(default_factory=time.monotonic)

    @classmethod
    def from_settings(cls, **overrides: Any) -> Budget:
        """Builds a budget from the settings, with non-None overrides applied."""
        settings = get_settings()
        values = {
            "max_states": settings.MAX_STATES,
            "max_candidates": settings.MAX_CANDIDATES,
            "max_profiles": settings.MAX_PROFILES,
            "max_seconds": settings.MAX_SECONDS,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def check_states(self, stage: str, count: int) -> None:
        if count > self.max_states:
            raise ResourceBudgetExceeded("states", self.max_states, count, stage)

    def check_candidates(self, stage: str, count: int) -> None:
        if count > self.max_candidates:
            raise ResourceBudgetExceeded("candidates", self.max_candidates, count, stage)

    def check_profiles(self, stage: str, count: int) -> None:
        if count > self.max_profiles:
            raise ResourceBudgetExceeded("profiles", self.max_profiles, count, stage)

    def check_time(self, stage: str) -> None:
        elapsed = time.monotonic() - self.started
        if elapsed > self.max_seconds:
            raise ResourceBudgetExceeded("seconds", self.max_seconds, round(elapsed, 3), stage)


def resolve_budget(budget: Budget | None) -> Budget:
    """Returns the given budget or a fresh one from the settings."""
    return budget if budget is not None else Budget.from_settings()


def stage(name: str) -> Callable:
    """Decorator marking a pipeline stage.

    Args:
        name: The stage name used in log records and budget errors.

    Returns:
        The decorated function.

    Notes:
        The wrapped function may take a ``budget`` keyword argument; the clock is
        checked against it before the stage runs. Budget errors escaping the stage
        without a stage name are tagged with this one.

    """

    def decorator(function: Callable) -> Callable:
        @wraps(function)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            budget = kwargs.get("budget")
            if budget is not None:
                budget.check_time(name)
            logger.debug(f"Entering stage {name}.")
            try:
                result = function(*args, **kwargs)
            except ResourceBudgetExceeded as error:
                if error.stage is None:
                    error.stage = name
                logger.error(f"Stage {name} ran out of budget: {error}.")
                raise
            logger.debug(f"Leaving stage {name}.")
            return result

        return wrapper

    return decorator
