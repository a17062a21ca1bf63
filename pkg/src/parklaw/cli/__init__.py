"""Command-line interface: ``parklaw <command> [flags]``."""

from parklaw.cli.main import app, run

__all__ = ["app", "run"]
