"""Contains the configurations of the tree matching engine."""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

Environment = Literal["dev", "test", "prod"]
ENVIRONMENTS: tuple[Environment, ...] = ("dev", "test", "prod")


class Settings(BaseSettings):
    """Defines settings from environment variables and/or dotenv file."""

    model_config = SettingsConfigDict(extra="ignore")

    APP_NAME: str = "tree-match"

    LOG_LEVEL: str = "WARNING"
    LOGGING_FILE: str = Field(default="", description="empty logs to stderr")
    LOGGER_ENGINE_NAME: str = "tree_match.engine"
    LOGGER_CLI_NAME: str = "tree_match.cli"

    MAX_STATES: int = Field(default=20000, description="states per construction")
    MAX_CANDIDATES: int = Field(default=4096, description="candidate substitutions")
    MAX_PROFILES: int = Field(default=512, description="realizable profiles")
    MAX_SECONDS: float = Field(default=600.0, description="wall-clock seconds per command")


@lru_cache()
def get_settings() -> Settings:
    """Gets cached environment variables as Settings-object."""
    return Settings(_env_file=get_dotenv_file())


def get_environment(default: Environment | None = None) -> Environment:
    """The deployment the CLI runs in, from ENVIRONMENT or the given default.

    The test suite sets ENVIRONMENT=test through pytest-env; the console script
    falls back to ``dev``.

    Raises:
        ValueError: If ENVIRONMENT is unset without a default, or names no known environment.

    """
    environment = os.environ.get("ENVIRONMENT", default)
    if environment is None:
        msg = f"ENVIRONMENT is not set; expected one of {', '.join(ENVIRONMENTS)}"
        raise ValueError(msg)
    environment = environment.lower()
    if environment not in ENVIRONMENTS:
        msg = f"environment '{environment}' not accepted; expected one of {', '.join(ENVIRONMENTS)}"
        raise ValueError(msg)
    return environment  # type: ignore[return-value]


def get_dotenv_file(default: Environment = "dev") -> str:
    """The dotenv file holding budget and logging overrides; production reads none."""
    environment = get_environment(default=default)
    return "" if environment == "prod" else f".env.{environment}"
