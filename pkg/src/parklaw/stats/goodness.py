"""Goodness-of-fit statistics used by the harnesses and the self-test."""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np
import numpy.typing as npt
from scipy import stats

from parklaw.exceptions import InvalidInputError
from parklaw.stats.constants import MIN_EXPECTED_COUNT

FloatArray = npt.NDArray[np.float64]


def ks_statistic(
    sample: Sequence[float] | npt.NDArray[np.floating] | npt.NDArray[np.integer],
    cdf: Callable[[FloatArray], FloatArray],
) -> float:
    """Return the one-sample Kolmogorov-Smirnov sup-distance to ``cdf``.

    Raises:
        InvalidInputError: If the sample is empty.
    """
    values = np.asarray(sample, dtype=np.float64)
    if values.size == 0:
        raise InvalidInputError("KS statistic needs a nonempty sample")
    return float(stats.kstest(values, cdf).statistic)


def _as_cells(
    observed: npt.ArrayLike, expected: npt.ArrayLike
) -> tuple[FloatArray, FloatArray]:
    obs = np.asarray(observed, dtype=np.float64).ravel()
    exp = np.asarray(expected, dtype=np.float64).ravel()
    if obs.size == 0 or obs.shape != exp.shape:
        raise InvalidInputError(
            "observed and expected must be nonempty and of equal length",
            observed=obs.size,
            expected=exp.size,
        )
    return obs, exp


def chi_square(observed: npt.ArrayLike, expected: npt.ArrayLike) -> float:
    """Return Pearson's statistic Σ (O - E)² / E.

    Raises:
        InvalidInputError: If lengths differ or any expected count is below
            MIN_EXPECTED_COUNT (pool sparse cells first).
    """
    obs, exp = _as_cells(observed, expected)
    if exp.min() < MIN_EXPECTED_COUNT:
        raise InvalidInputError(
            "expected counts must be >= 5 per cell",
            min_expected=float(exp.min()),
        )
    return float(np.sum((obs - exp) ** 2 / exp))


def chi_square_pvalue(
    observed: npt.ArrayLike, expected: npt.ArrayLike, ddof: int = 0
) -> float:
    """Return the upper-tail χ² p-value with (cells - 1 - ddof) degrees of freedom."""
    statistic = chi_square(observed, expected)
    dof = np.asarray(observed).size - 1 - ddof
    if dof < 1:
        raise InvalidInputError(
            "chi-square test needs at least one degree of freedom", dof=dof
        )
    return float(stats.chi2.sf(statistic, dof))


def pool_sparse_cells(
    observed: npt.ArrayLike,
    expected: npt.ArrayLike,
    min_expected: float = MIN_EXPECTED_COUNT,
) -> tuple[FloatArray, FloatArray]:
    """Merge consecutive cells until every expected count reaches ``min_expected``.

    Cells are pooled left to right; an underfull tail is folded into the last
    complete cell. Totals are preserved.
    """
    obs, exp = _as_cells(observed, expected)
    pooled_obs: list[float] = []
    pooled_exp: list[float] = []
    acc_obs = acc_exp = 0.0
    for o, e in zip(obs, exp, strict=True):
        acc_obs += o
        acc_exp += e
        if acc_exp >= min_expected:
            pooled_obs.append(acc_obs)
            pooled_exp.append(acc_exp)
            acc_obs = acc_exp = 0.0
    if acc_exp > 0.0 or acc_obs > 0.0:
        if pooled_exp:
            pooled_obs[-1] += acc_obs
            pooled_exp[-1] += acc_exp
        else:
            pooled_obs.append(acc_obs)
            pooled_exp.append(acc_exp)
    return np.array(pooled_obs), np.array(pooled_exp)
