"""Tests for parklaw.utils.logging module."""

from __future__ import annotations

import json
import logging

import pytest

from parklaw.utils.logging import (
    Correlation,
    clear_correlation_context,
    configure_logging,
    correlation_scope,
    get_logger,
    set_correlation_context,
)


def _read_last_json_log_line(capsys: pytest.CaptureFixture[str]) -> dict[str, object]:
    captured = capsys.readouterr()
    assert captured.out == "", "Logs must never reach stdout"
    lines = [line for line in captured.err.splitlines() if line.strip()]
    assert lines, "Expected at least one log line on stderr"
    return json.loads(lines[-1])


def test_configure_logging_sets_root_level() -> None:
    configure_logging(level="WARNING", log_format="console")
    assert logging.getLogger().level == logging.WARNING


def test_configure_logging_default_settings_do_not_error() -> None:
    configure_logging()


def test_get_logger_returns_logger_proxy() -> None:
    configure_logging(level="DEBUG", log_format="console")
    logger = get_logger("test.module")
    assert hasattr(logger, "info")
    assert hasattr(logger, "debug")
    assert hasattr(logger, "warning")


def test_json_log_is_valid_and_contains_correlation_fields(
    capsys: pytest.CaptureFixture[str],
) -> None:
    configure_logging(level="INFO", log_format="json")
    set_correlation_context(command="tail", seed=7, replicate=3)

    logger = get_logger("test.json")
    logger.info("hello", n=9)
    payload = _read_last_json_log_line(capsys)

    assert payload["event"] == "hello"
    assert payload["n"] == 9
    assert payload["command"] == "tail"
    assert payload["seed"] == 7
    assert payload["replicate"] == 3
    assert payload["level"] == "info"
    assert payload["logger"] == "test.json"
    assert "timestamp" in payload


def test_json_log_omits_correlation_fields_when_unset(
    capsys: pytest.CaptureFixture[str],
) -> None:
    configure_logging(level="INFO", log_format="json")
    clear_correlation_context()

    logger = get_logger("test.json")
    logger.info("hello")
    payload = _read_last_json_log_line(capsys)

    assert payload["event"] == "hello"
    assert "command" not in payload
    assert "seed" not in payload
    assert "replicate" not in payload


def test_seed_zero_is_recorded(capsys: pytest.CaptureFixture[str]) -> None:
    configure_logging(level="INFO", log_format="json")
    set_correlation_context(seed=0)

    get_logger("test.json").info("hello")
    payload = _read_last_json_log_line(capsys)

    assert payload["seed"] == 0


def test_correlation_fields_skip_unset_values() -> None:
    assert Correlation().fields() == {}
    assert Correlation(command="pmf", seed=0).fields() == {"command": "pmf", "seed": 0}


def test_set_correlation_context_merges_fields(
    capsys: pytest.CaptureFixture[str],
) -> None:
    configure_logging(level="INFO", log_format="json")
    set_correlation_context(command="tv")
    set_correlation_context(seed=5)

    get_logger("test.json").info("hello")
    payload = _read_last_json_log_line(capsys)

    assert payload["command"] == "tv"
    assert payload["seed"] == 5


def test_correlation_scope_restores_previous_fields(
    capsys: pytest.CaptureFixture[str],
) -> None:
    configure_logging(level="INFO", log_format="json")
    set_correlation_context(command="tail", seed=1)
    logger = get_logger("test.json")

    with correlation_scope(replicate=4):
        logger.info("inside")
        inside = _read_last_json_log_line(capsys)
    logger.info("outside")
    outside = _read_last_json_log_line(capsys)

    assert inside["replicate"] == 4
    assert inside["command"] == "tail"
    assert "replicate" not in outside
    assert outside["seed"] == 1


def test_correlation_scope_restores_after_exception(
    capsys: pytest.CaptureFixture[str],
) -> None:
    configure_logging(level="INFO", log_format="json")
    set_correlation_context(seed=2)
    with pytest.raises(RuntimeError), correlation_scope(seed=3):
        raise RuntimeError("boom")

    get_logger("test.json").info("after")
    assert _read_last_json_log_line(capsys)["seed"] == 2
