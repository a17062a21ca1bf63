"""Monte-Carlo harnesses for the limit laws of the first k places.

- sum:  √(12/k) (Σ_{j≤k} π(j)/n - k/2) → N(0, 1) when k → ∞, k = o(√n)
- max:  k (1 - max_{j≤k} π(j)/n) → Exp(1) when k → ∞, k = o(n)
- bias: the exact finite-n mean of the sum statistic and the exact KS
  distance of the max statistic to Exp(1), the floor the harnesses reach
- tail: ℙ(n - max_{j≤k} π(j) ≥ a) at k = round(cn) against the walk-side
  limit 𝔼[(1-c)^(a - S)], with S approximated by S_{n'-a} of a horizon-n'
  excursion
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from scipy import stats

from parklaw.config import settings
from parklaw.exceptions import InvalidInputError
from parklaw.stats.constants import (
    MIN_LIMIT_SAMPLES,
    TAIL_EXACT_MAX_N,
    TAIL_MAX_A,
    TAIL_MAX_HORIZON,
    TAIL_START_HORIZON,
)
from parklaw.stats.goodness import ks_statistic
from parklaw.stats.replicates import sample_heights, sample_prefix_statistics
from parklaw.stats.schemas import LimitStatistic, LimitTestReport, TailReport
from parklaw.utils.logging import get_logger
from parklaw.walks.laws import cdf_symmetric, joint_pmf_table
from parklaw.walks.transfer import transfer_for

logger = get_logger(__name__)


def _check_limit_args(n: int, k: int, samples: int) -> None:
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    if samples < MIN_LIMIT_SAMPLES:
        raise InvalidInputError(
            "limit tests need at least 100 samples", samples=samples
        )


def _report(
    statistic: LimitStatistic, n: int, k: int, samples: int, ks: float
) -> LimitTestReport:
    threshold = settings.KS_THRESHOLD
    passed = None if k == 1 else ks < threshold
    logger.info("Limit test finished", statistic=str(statistic), ks=ks, passed=passed)
    return LimitTestReport(
        statistic=statistic,
        n=n,
        k=k,
        samples=samples,
        ks_distance=ks,
        threshold=threshold,
        passed=passed,
    )


def sum_statistics(prefixes: npt.NDArray[np.int64], n: int) -> npt.NDArray[np.float64]:
    """Return √(12/k) (Σ π(j)/n - k/2) for each sampled prefix."""
    k = prefixes.shape[1]
    return np.sqrt(12.0 / k) * (prefixes.sum(axis=1) / n - k / 2.0)


def max_statistics(prefixes: npt.NDArray[np.int64], n: int) -> npt.NDArray[np.float64]:
    """Return k (1 - max π(j)/n) for each sampled prefix."""
    k = prefixes.shape[1]
    return k * (1.0 - prefixes.max(axis=1) / n)


def sum_clt_test(
    n: int, k: int, samples: int, *, seed: int = 0, threads: int = 1
) -> LimitTestReport:
    """KS distance of the normalised sum of the first k places to N(0, 1).

    Raises:
        InvalidInputError: If k is outside [1, n] or samples < 100.
    """
    _check_limit_args(n, k, samples)
    values = sample_prefix_statistics(
        n,
        k,
        lambda prefixes: sum_statistics(prefixes, n),
        samples=samples,
        seed=seed,
        threads=threads,
    )
    ks = ks_statistic(values, stats.norm.cdf)
    return _report(LimitStatistic.SUM_CLT, n, k, samples, ks)


def max_exponential_test(
    n: int, k: int, samples: int, *, seed: int = 0, threads: int = 1
) -> LimitTestReport:
    """KS distance of the normalised gap below the largest place to Exp(1).

    Raises:
        InvalidInputError: If k is outside [1, n] or samples < 100.
    """
    _check_limit_args(n, k, samples)
    values = sample_prefix_statistics(
        n,
        k,
        lambda prefixes: max_statistics(prefixes, n),
        samples=samples,
        seed=seed,
        threads=threads,
    )
    ks = ks_statistic(values, stats.expon.cdf)
    return _report(LimitStatistic.MAX_EXPONENTIAL, n, k, samples, ks)


def sum_statistic_mean(n: int, k: int) -> float:
    """Return the exact mean of √(12/k) (Σ_{j≤k} π(j)/n - k/2).

    Every place has the law of π(1), so the mean is √(12k) (𝔼[π(1)]/n - 1/2).
    It is negative: parking functions favour small places.
    """
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    first_place = float(np.dot(joint_pmf_table(n, 1), np.arange(1, n + 1)))
    return math.sqrt(12.0 * k) * (first_place / n - 0.5)


def max_statistic_cdf(n: int, k: int) -> npt.NDArray[np.float64]:
    """Return ℙ(n - max π(1..k) ≤ m) for m = 0..n-1, exactly.

    The normalised statistic k (1 - max/n) equals k m / n on that event.

    Raises:
        InvalidInputError: If k is outside [1, n].
        SizeLimitError: If n exceeds the transfer guard.
    """
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    at_least = np.array([cdf_symmetric(n, k, a) for a in range(1, n)])
    return np.append(1.0 - at_least, 1.0)


def max_exponential_bias(n: int, k: int) -> float:
    """Return sup_y |ℙ(k (1 - max/n) ≤ y) - (1 - e^(-y))| at finite n.

    This is the KS distance the harness converges to as samples grow.
    Between atoms the finite-n CDF is flat, so the supremum is attained at
    an atom or just before the next one.
    """
    cdf = max_statistic_cdf(n, k)
    atoms = k * np.arange(n) / n
    left = stats.expon.cdf(atoms)
    right = np.append(stats.expon.cdf(atoms[1:]), 1.0)
    return float(np.maximum(np.abs(cdf - left), np.abs(cdf - right)).max())


def tail_weights(
    heights: npt.NDArray[np.int64], c: float, a: int
) -> npt.NDArray[np.float64]:
    """Return (1-c)^(a - S) with 0^0 = 1; S ≤ a on every excursion."""
    exponent = (a - heights).astype(np.float64)
    return np.power(1.0 - c, exponent)


def exact_tail_rhs(horizon: int, c: float, a: int) -> float:
    """Return 𝔼[(1-c)^(a - S_{n'-a})] under the horizon-n' conditioned walk."""
    law = transfer_for(horizon).height_law(horizon - a)
    heights = np.arange(-1, horizon + 1)
    reachable = (heights >= 0) & (heights <= a)
    return float(np.dot(law[reachable], tail_weights(heights[reachable], c, a)))


def _mean_and_stderr(values: npt.NDArray[np.float64]) -> tuple[float, float]:
    if values.size < 2:
        return float(values.mean()), 0.0
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def tail_comparison(
    n: int, c: float, a: int, samples: int, *, seed: int = 0, threads: int = 1
) -> TailReport:
    """Compare ℙ(n - max π(1..k) ≥ a) at k = round(cn) with its walk-side limit.

    The walk side starts at horizon n' = 64 and doubles n' until one doubling
    moves the estimate by no more than its standard error, or n' = 4096.

    Args:
        n: Parking function size.
        c: Fraction of cars, in (0, 1].
        a: Gap below n, 0 ≤ a ≤ min(20, n-1).
        samples: Draws per side.
        seed: Base seed; both sides use separate streams.
        threads: Worker count for the replicate fan-out.

    Raises:
        InvalidInputError: If c is outside (0, 1], a is out of range or
            round(cn) is 0.
    """
    if not 0.0 < c <= 1.0:
        raise InvalidInputError("c must lie in (0, 1]", c=c)
    if not 0 <= a <= min(TAIL_MAX_A, n - 1):
        raise InvalidInputError("a must lie in [0, min(20, n-1)]", a=a, n=n)
    if samples < 1:
        raise InvalidInputError("samples must be >= 1", samples=samples)
    k = math.floor(c * n + 0.5)
    if k < 1:
        raise InvalidInputError("round(c*n) must be >= 1", c=c, n=n)

    hits = sample_prefix_statistics(
        n,
        k,
        lambda prefixes: (n - prefixes.max(axis=1) >= a).astype(np.float64),
        samples=samples,
        seed=seed,
        threads=threads,
    )
    lhs = float(hits.mean())
    lhs_stderr = math.sqrt(lhs * (1.0 - lhs) / samples)

    horizon = TAIL_START_HORIZON
    previous: float | None = None
    while True:
        heights = sample_heights(
            horizon, horizon - a, samples=samples, seed=seed, threads=threads
        )
        rhs, rhs_stderr = _mean_and_stderr(tail_weights(heights, c, a))
        logger.debug(
            "Tail horizon estimate", horizon=horizon, rhs=rhs, stderr=rhs_stderr
        )
        converged = previous is not None and abs(rhs - previous) <= rhs_stderr
        if converged or horizon >= TAIL_MAX_HORIZON:
            break
        previous = rhs
        horizon *= 2

    lhs_exact = cdf_symmetric(n, k, a) if n <= TAIL_EXACT_MAX_N else None
    rhs_exact = exact_tail_rhs(horizon, c, a) if horizon <= TAIL_EXACT_MAX_N else None
    return TailReport(
        n=n,
        k=k,
        c=c,
        a=a,
        samples=samples,
        lhs=lhs,
        lhs_stderr=lhs_stderr,
        rhs=min(max(rhs, 0.0), 1.0),
        rhs_stderr=rhs_stderr,
        approx_n=horizon,
        lhs_exact=lhs_exact,
        rhs_exact=rhs_exact,
    )
