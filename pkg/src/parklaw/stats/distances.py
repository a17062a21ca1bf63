"""Distances between the first k places and k iid uniforms on [1, n].

d_TV(k, n) = Σ_{i ∈ [1,n]^k} |ℙ(π(1..k) = i) - n^-k|
d_K(k, n)  = max_{i ∈ [1,n]^k} |ℙ(π(1..k) ≤ i) - i_1 ⋯ i_k / n^k|

d_TV is the plain sum, twice the usual total-variation distance.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from parklaw.config import settings
from parklaw.exceptions import InvalidInputError, MethodError
from parklaw.parking.enumeration import oracle_joint_pmf
from parklaw.stats.constants import (
    DISTANCE_ENUMERATION_MAX_N,
    DISTANCE_EXACT_DP_MAX_K,
    DISTANCE_EXACT_DP_MAX_N,
    Stream,
)
from parklaw.stats.replicates import replicate_rng, sample_prefixes
from parklaw.stats.schemas import DistanceReport, Method
from parklaw.utils.logging import get_logger
from parklaw.walks.laws import joint_pmf_table

logger = get_logger(__name__)

FloatArray = npt.NDArray[np.float64]

# Grid points scanned per block of a random-grid d_K estimate
_GRID_BLOCK: int = 128


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)


def _dp_feasible(n: int, k: int) -> bool:
    return n <= DISTANCE_EXACT_DP_MAX_N and k <= DISTANCE_EXACT_DP_MAX_K


def _enumeration_feasible(n: int) -> bool:
    return n <= DISTANCE_ENUMERATION_MAX_N


def _resolve(n: int, k: int, method: Method, *, allow_monte_carlo: bool) -> Method:
    """Return the concrete method, raising MethodError if it cannot run."""
    if method is Method.AUTO:
        if _dp_feasible(n, k):
            return Method.EXACT_DP
        if _enumeration_feasible(n):
            return Method.EXACT_ENUMERATION
        if allow_monte_carlo:
            return Method.MONTE_CARLO
        raise MethodError("no exact method covers this size", n=n, k=k)
    if method is Method.EXACT_DP and not _dp_feasible(n, k):
        raise MethodError(
            "exact-dp needs n <= 200 and k <= 2",
            n=n,
            k=k,
        )
    if method is Method.EXACT_ENUMERATION and not _enumeration_feasible(n):
        raise MethodError("exact-enumeration needs n <= 6", n=n, k=k)
    if method is Method.MONTE_CARLO and not allow_monte_carlo:
        raise MethodError("total variation has no Monte-Carlo estimator", n=n, k=k)
    return method


def exact_pmf_table(n: int, k: int, method: Method) -> FloatArray:
    """Return the dense law of (π(1), ..., π(k)), index i-1 for place i."""
    if method is Method.EXACT_DP:
        return joint_pmf_table(n, k)
    if method is Method.EXACT_ENUMERATION:
        return oracle_joint_pmf(n, k).to_array()
    raise MethodError("not an exact method", method=str(method))


def uniform_cdf_grid(n: int, k: int) -> FloatArray:
    """Return i_1 ⋯ i_k / n^k on the full grid, shape (n,)*k."""
    axis = np.arange(1, n + 1, dtype=np.float64) / n
    grid = np.ones((n,) * k)
    for dim in range(k):
        shape = [1] * k
        shape[dim] = n
        grid = grid * axis.reshape(shape)
    return grid


def cumulative(table: FloatArray) -> FloatArray:
    """Return prefix sums of a pmf table along every axis."""
    cdf = table
    for dim in range(table.ndim):
        cdf = np.cumsum(cdf, axis=dim)
    return cdf


def tv_distance(n: int, k: int, method: Method | str = Method.AUTO) -> DistanceReport:
    """Return the summed absolute pmf deviation from iid uniforms.

    Args:
        n: Size, n ≥ 1.
        k: Number of leading places, 1 ≤ k ≤ n.
        method: exact-dp (k ≤ 2, n ≤ 200), exact-enumeration (n ≤ 6) or auto.

    Raises:
        InvalidInputError: If k is outside [1, n].
        MethodError: If the method cannot run at this size, or is monte-carlo.
    """
    _check_nk(n, k)
    resolved = _resolve(n, k, Method(method), allow_monte_carlo=False)
    table = exact_pmf_table(n, k, resolved)
    value = float(np.abs(table - float(n) ** -k).sum())
    logger.debug(
        "Computed total variation", n=n, k=k, method=str(resolved), value=value
    )
    return DistanceReport(n=n, k=k, value=value, method=resolved)


def kolmogorov_distance(
    n: int,
    k: int,
    method: Method | str = Method.AUTO,
    *,
    samples: int | None = None,
    seed: int = 0,
    threads: int = 1,
) -> DistanceReport:
    """Return the maximum CDF deviation from iid uniforms.

    Exact methods scan the full grid. Monte Carlo compares the empirical CDF
    of ``samples`` sampled prefixes with i_1 ⋯ i_k / n^k on the full grid
    when k = 1, or k = 2 with at most KOLMOGOROV_FULL_GRID_MAX_CELLS cells,
    and otherwise on the n diagonal points (v, ..., v) plus
    KOLMOGOROV_GRID_POINTS random grid points, in which case the report is
    flagged as a lower bound.

    Raises:
        InvalidInputError: If k is outside [1, n] or Monte Carlo lacks samples.
        MethodError: If an exact method cannot run at this size.
    """
    _check_nk(n, k)
    resolved = _resolve(n, k, Method(method), allow_monte_carlo=True)
    if resolved is not Method.MONTE_CARLO:
        table = exact_pmf_table(n, k, resolved)
        value = float(np.abs(cumulative(table) - uniform_cdf_grid(n, k)).max())
        return DistanceReport(n=n, k=k, value=value, method=resolved)

    if samples is None or samples < 1:
        raise InvalidInputError("monte-carlo needs --samples >= 1", samples=samples)
    prefixes = sample_prefixes(n, k, samples=samples, seed=seed, threads=threads)
    full_grid = k == 1 or (k == 2 and n * n <= settings.KOLMOGOROV_FULL_GRID_MAX_CELLS)
    if full_grid:
        value, at_cdf = _full_grid_deviation(prefixes, n)
    else:
        value, at_cdf = _random_grid_deviation(prefixes, n, seed)
    stderr = float(np.sqrt(at_cdf * (1.0 - at_cdf) / samples))
    return DistanceReport(
        n=n,
        k=k,
        value=value,
        method=resolved,
        samples=samples,
        stderr=stderr,
        lower_bound=not full_grid,
    )


def _full_grid_deviation(
    prefixes: npt.NDArray[np.int64], n: int
) -> tuple[float, float]:
    """Return (max deviation, empirical CDF at the argmax) over [1, n]^k."""
    samples, k = prefixes.shape
    flat = np.ravel_multi_index(tuple((prefixes - 1).T), (n,) * k)
    counts = np.bincount(flat, minlength=n**k).reshape((n,) * k).astype(np.float64)
    ecdf = cumulative(counts) / samples
    deviation = np.abs(ecdf - uniform_cdf_grid(n, k))
    at = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
    return float(deviation[at]), float(ecdf[at])


def _diagonal_deviation(
    prefixes: npt.NDArray[np.int64], n: int
) -> tuple[float, float]:
    """Return (max deviation, empirical CDF at the argmax) over (v, ..., v)."""
    samples, k = prefixes.shape
    maxima = np.sort(prefixes.max(axis=1))
    values = np.arange(1, n + 1)
    ecdf = np.searchsorted(maxima, values, side="right") / samples
    deviation = np.abs(ecdf - (values / n) ** k)
    arg = int(np.argmax(deviation))
    return float(deviation[arg]), float(ecdf[arg])


def _block_ecdf(
    prefixes: npt.NDArray[np.int64], block: npt.NDArray[np.int64]
) -> FloatArray:
    """Return the fraction of prefixes below each point of ``block``.

    Only (sample, point) pairs still below on every axis so far are kept,
    so work shrinks geometrically with the axis count.
    """
    rows, cols = np.nonzero(prefixes[:, 0, None] <= block[None, :, 0])
    for axis in range(1, prefixes.shape[1]):
        if rows.size == 0:
            break
        keep = prefixes[rows, axis] <= block[cols, axis]
        rows, cols = rows[keep], cols[keep]
    counts = np.bincount(cols, minlength=block.shape[0])
    return counts / prefixes.shape[0]


def _random_grid_deviation(
    prefixes: npt.NDArray[np.int64], n: int, seed: int
) -> tuple[float, float]:
    """Return (max deviation, empirical CDF at the argmax) over a partial grid.

    The grid is every diagonal point plus KOLMOGOROV_GRID_POINTS uniform ones.
    """
    samples, k = prefixes.shape
    rng = replicate_rng(seed, Stream.GRID, 0)
    points = rng.integers(1, n + 1, size=(settings.KOLMOGOROV_GRID_POINTS, k))
    best, best_cdf = _diagonal_deviation(prefixes, n)
    for start in range(0, points.shape[0], _GRID_BLOCK):
        block = points[start : start + _GRID_BLOCK]
        ecdf = _block_ecdf(prefixes, block)
        deviation = np.abs(ecdf - np.prod(block / n, axis=1))
        arg = int(np.argmax(deviation))
        if deviation[arg] > best:
            best, best_cdf = float(deviation[arg]), float(ecdf[arg])
    logger.info(
        "Scanned random Kolmogorov grid",
        points=int(points.shape[0]) + n,
        samples=samples,
        value=best,
    )
    return best, best_cdf
