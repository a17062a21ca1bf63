"""Shared pytest fixtures and configuration."""

from collections.abc import Iterator

import numpy as np
import pytest

from parklaw.config import Settings
from parklaw.utils.logging import clear_correlation_context, configure_logging

# Seconds allowed for an acceptance-scale test unless it sets its own timeout
SLOW_TEST_TIMEOUT = 1800


def pytest_collection_modifyitems(items: list[pytest.Item]) -> None:
    """Give slow tests a longer timeout than the suite-wide default."""
    for item in items:
        if item.get_closest_marker("slow") and not item.get_closest_marker("timeout"):
            item.add_marker(pytest.mark.timeout(SLOW_TEST_TIMEOUT))


@pytest.fixture(autouse=True)
def reset_logging_context() -> Iterator[None]:
    """Reset correlation context between tests."""
    clear_correlation_context()
    yield
    clear_correlation_context()


@pytest.fixture
def test_settings() -> Settings:
    """Create a Settings instance with test-safe defaults."""
    return Settings(
        _env_file=None,  # type: ignore[call-arg]
        LOG_LEVEL="DEBUG",
        LOG_FORMAT="console",
    )


@pytest.fixture
def rng() -> np.random.Generator:
    """Fixed-seed generator so sampler tests are deterministic."""
    return np.random.default_rng(20_240_601)


@pytest.fixture(autouse=True, scope="session")
def configure_test_logging() -> Iterator[None]:
    """Configure logging for tests with console output."""
    configure_logging(level="DEBUG", log_format="console")
    yield
