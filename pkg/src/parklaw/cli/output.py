"""CSV and JSON record writers.

Floats are rendered with 12 significant digits, so identical runs produce
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import typer

from parklaw.cli.schemas import OutputFormat, RunConfig
from parklaw.utils.logging import get_logger

logger = get_logger(__name__)

Scalar = int | float | str | bool | None
Record = dict[str, Scalar]


def format_float(value: float) -> str:
    """Render a float with 12 significant digits."""
    return f"{value:.12g}"


def _csv_cell(value: Scalar) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _json_value(value: Scalar) -> Scalar:
    if isinstance(value, float) and not isinstance(value, bool):
        return float(format_float(value))
    return value


def render_csv(records: Sequence[Record], columns: Sequence[str]) -> str:
    """Return a header row followed by one row per record."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(config: RunConfig, records: Sequence[Record]) -> str:
    """Return {"config": ..., "results": [...]} as indented JSON."""
    document = {
        "config": config.model_dump(mode="json"),
        "results": [
            {key: _json_value(value) for key, value in record.items()}
            for record in records
        ],
    }
    return json.dumps(document, indent=2) + "\n"


@dataclass(frozen=True)
class RecordWriter:
    """Writes one record set to a file or stdout."""

    config: RunConfig

    def render(self, records: Sequence[Record], columns: Sequence[str]) -> str:
        """Encode records in the configured format."""
        if self.config.format is OutputFormat.JSON:
            return render_json(self.config, records)
        return render_csv(records, columns)

    def write(self, records: Sequence[Record], columns: Sequence[str]) -> None:
        """Write records to ``config.out`` or stdout."""
        text = self.render(records, columns)
        if self.config.out is None:
            typer.echo(text, nl=False)
            return
        path = Path(self.config.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info("Records saved", path=str(path), rows=len(records))
