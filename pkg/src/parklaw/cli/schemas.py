"""Run configuration echoed with every CLI record set."""

from __future__ import annotations

from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from parklaw.stats.schemas import Method

# Seeds are 64-bit unsigned integers
SEED_MAX: int = 2**64 - 1


class OutputFormat(StrEnum):
    """Record encoding."""

    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation.

    Unused parameters of a command stay None so the echoed config shows
    exactly what the command consumed.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    n: int | None = Field(default=None, ge=1)
    k: int | None = Field(default=None, ge=1)
    a: int | None = Field(default=None, ge=0)
    c: float | None = None
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    samples: int | None = Field(default=None, ge=1)
    method: Method | None = None
    format: OutputFormat = OutputFormat.CSV
    out: Path | None = None
    threads: int = Field(default=1, ge=1)
    count_only: bool = False
