"""Exceptions raised by parklaw.

Every error carries a human-readable message plus the sizes or values that
triggered it, so CLI output and logs point at the offending parameter.
"""

from __future__ import annotations

from typing import Any


class ParklawError(Exception):
    """Base exception for all parklaw errors."""

    def __init__(self, message: str, **context: Any) -> None:
        """Initialize error with optional keyword context.

        Args:
            message: Human-readable error description.
            **context: Offending parameters (e.g. ``n=9``, ``k=3``).
        """
        self.message = message
        self.context = context
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format error message with context if available."""
        if not self.context:
            return self.message
        details = ", ".join(f"{key}={value!r}" for key, value in self.context.items())
        return f"{self.message} ({details})"


class InvalidInputError(ParklawError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class SizeLimitError(ParklawError):
    """Raised when a size guard is exceeded.

    Guards are hard errors: an oversized request is never silently truncated.
    """


class MethodError(SizeLimitError):
    """Raised when the requested computation method is infeasible for the size."""


class InvalidTreeError(ParklawError, ValueError):
    """Raised when a parent map does not describe a tree rooted at 0."""


class InvalidCodeError(ParklawError, ValueError):
    """Raised when a Prüfer code has the wrong length or out-of-range entries."""
