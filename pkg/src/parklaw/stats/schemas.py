"""Report models returned by the distance, limit and tail harnesses."""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field


class Method(StrEnum):
    """How a distance is computed."""

    EXACT_DP = "exact-dp"
    EXACT_ENUMERATION = "exact-enumeration"
    MONTE_CARLO = "monte-carlo"
    AUTO = "auto"


class LimitStatistic(StrEnum):
    """Normalised statistic of the first k places."""

    SUM_CLT = "sum-clt"
    MAX_EXPONENTIAL = "max-exponential"


class DistanceReport(BaseModel):
    """Distance between the first k places and k iid uniforms on [1, n].

    Total variation is reported as the plain sum of absolute pmf differences,
    twice the conventional value, so it lies in [0, 2].

    Attributes:
        lower_bound: True when a Monte-Carlo scan covered a random subset of
            the grid, so ``value`` under-estimates the true maximum.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    value: float = Field(..., ge=0.0)
    method: Method
    samples: int = Field(default=0, ge=0)
    stderr: float = Field(default=0.0, ge=0.0)
    lower_bound: bool = False


class LimitTestReport(BaseModel):
    """KS comparison of a normalised statistic with its limiting law.

    ``passed`` is None when k = 1, where no limit theorem applies.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    statistic: LimitStatistic
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    samples: int = Field(..., ge=1)
    ks_distance: float = Field(..., ge=0.0, le=1.0)
    threshold: float
    passed: bool | None = Field(default=None, alias="pass")


class TailReport(BaseModel):
    """Parking-side and walk-side estimates of ℙ(n - max ≥ a) at k = round(cn).

    Attributes:
        approx_n: Excursion horizon n' used on the walk side.
        lhs_exact: Exact finite-n left side, when n is small enough.
        rhs_exact: Exact 𝔼[(1-c)^(a - S_{n'-a})] under the horizon-n' walk,
            when n' is small enough.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    c: float = Field(..., gt=0.0, le=1.0)
    a: int = Field(..., ge=0)
    samples: int = Field(..., ge=1)
    lhs: float = Field(..., ge=0.0, le=1.0)
    lhs_stderr: float = Field(..., ge=0.0)
    rhs: float = Field(..., ge=0.0, le=1.0)
    rhs_stderr: float = Field(..., ge=0.0)
    approx_n: int = Field(..., ge=1)
    lhs_exact: float | None = None
    rhs_exact: float | None = None
