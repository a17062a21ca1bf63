"""Structured logging configuration using structlog.

Every event of a run carries the command and base seed, and events raised
inside a Monte-Carlo worker also carry the replicate batch index. Logs go to
stderr; stdout is reserved for result records.
"""

import dataclasses
import logging
import sys
from collections.abc import Iterator, MutableMapping
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any, cast

import structlog
from structlog.types import Processor

from parklaw.config import settings


@dataclass(frozen=True)
class Correlation:
    """Fields stamped onto every event of the current context."""

    command: str | None = None
    seed: int | None = None
    replicate: int | None = None

    def fields(self) -> dict[str, str | int]:
        """Return the fields that are set, in declaration order."""
        return {
            key: value
            for key, value in dataclasses.asdict(self).items()
            if value is not None
        }


_correlation: ContextVar[Correlation] = ContextVar(
    "correlation", default=Correlation()
)


def set_correlation_context(
    command: str | None = None,
    seed: int | None = None,
    replicate: int | None = None,
) -> None:
    """Merge correlation fields into the current context; None keeps a field.

    Args:
        command: CLI command being executed (e.g. "tail").
        seed: Base seed of the run.
        replicate: Replicate batch index of the current worker.
    """
    given = {"command": command, "seed": seed, "replicate": replicate}
    updates = {key: value for key, value in given.items() if value is not None}
    _correlation.set(dataclasses.replace(_correlation.get(), **updates))


def clear_correlation_context() -> None:
    """Drop all correlation fields."""
    _correlation.set(Correlation())


@contextmanager
def correlation_scope(**fields: Any) -> Iterator[None]:
    """Apply correlation fields for the duration of a block, then restore."""
    token = _correlation.set(dataclasses.replace(_correlation.get(), **fields))
    try:
        yield
    finally:
        _correlation.reset(token)


def _add_correlation_fields(
    logger: logging.Logger,
    method_name: str,
    event_dict: MutableMapping[str, Any],
) -> MutableMapping[str, Any]:
    _ = logger, method_name  # Required by structlog processor signature
    event_dict.update(_correlation.get().fields())
    return event_dict


def configure_logging(
    level: str | None = None,
    log_format: str | None = None,
) -> None:
    """Configure structlog and route stdlib logging to stderr.

    Args:
        level: Log level name. Defaults to settings.LOG_LEVEL.
        log_format: "console" or "json". Defaults to settings.LOG_FORMAT.
    """
    level = level or settings.LOG_LEVEL
    log_format = log_format or settings.LOG_FORMAT

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
        _add_correlation_fields,
    ]
    renderer: Processor
    if log_format == "json":
        shared_processors.append(structlog.processors.format_exc_info)
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())

    structlog.configure(
        processors=[*shared_processors, renderer],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    # stdout carries records only
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level.upper()),
        force=True,
    )


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Return a structlog logger bound to ``name``."""
    return cast(structlog.stdlib.BoundLogger, structlog.get_logger(name))
