"""parklaw configuration using pydantic-settings.

Settings only influence diagnostics and Monte-Carlo harness parameters.
Values that determine exact results (size guards, stream derivation) are
module constants and cannot be overridden from the environment.
"""

from __future__ import annotations

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from ``PARKLAW_*`` variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="PARKLAW_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: Literal["console", "json"] = "console"

    # Limit-theorem harnesses (engineering defaults, not theorem constants)
    KS_THRESHOLD: float = Field(default=0.05, gt=0.0, le=1.0)
    GOF_SIGNIFICANCE: float = Field(default=1e-3, gt=0.0, lt=1.0)

    # Monte-Carlo Kolmogorov distance
    KOLMOGOROV_GRID_POINTS: int = Field(default=100_000, ge=1)
    KOLMOGOROV_FULL_GRID_MAX_CELLS: int = Field(default=1_000_000, ge=1)


# Singleton instance for import convenience
settings = Settings()
