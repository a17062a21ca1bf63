"""Exact finite-n laws of the first places, read off the conditioned walk.

For 1 ≤ k ≤ n and places i_1..i_k in [1, n],

    ℙ(π(1..k) = (i_1..i_k)) = (n-k)!/n! · E_n[Π_s (X_{j_s})_{m_s}]

where (j_s, m_s) are the distinct places and their multiplicities and E_n is
the Poisson(1) walk conditioned to first hit -1 at time n+1.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import product

import numpy as np
import numpy.typing as npt
from scipy import special

from parklaw.exceptions import InvalidInputError, SizeLimitError
from parklaw.utils.logging import get_logger
from parklaw.walks.constants import PMF_TABLE_MAX_CELLS
from parklaw.walks.schemas import WeightQuery
from parklaw.walks.transfer import (
    conditioned_expectation,
    falling_factorial,
    transfer_for,
)

logger = get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)


def _prefix_factor(n: int, k: int) -> float:
    """Return (n-k)!/n!."""
    return float(np.exp(special.gammaln(n - k + 1) - special.gammaln(n + 1)))


def joint_pmf(n: int, indices: Sequence[int]) -> float:
    """Return ℙ(π(1) = i_1, ..., π(k) = i_k) for a uniform parking function.

    Args:
        n: Size, n ≥ 1.
        indices: Places (i_1, ..., i_k), 1 ≤ k ≤ n, each in [1, n].

    Returns:
        The probability, computed by one weighted pass of the walk transfer.

    Raises:
        InvalidInputError: If k or any place is out of range.
    """
    _check_nk(n, len(indices))
    for place in indices:
        if not 1 <= place <= n:
            raise InvalidInputError("place must lie in [1, n]", place=place, n=n)
    query = WeightQuery.from_indices(indices)
    return _prefix_factor(n, len(indices)) * conditioned_expectation(n, query)


def increment_means(n: int) -> FloatArray:
    """Return E_n[X_t] for t = 1..n+1; nonincreasing in t and summing to n."""
    engine = transfer_for(n)
    return engine.increment_moments(engine.support)


def joint_pmf_table(n: int, k: int) -> FloatArray:
    """Return the dense law of (π(1), ..., π(k)) with shape (n,)*k.

    k = 1 and k = 2 come from shared forward/backward passes (one tap per
    step or step pair); larger k evaluates ``joint_pmf`` tuple by tuple.

    Raises:
        InvalidInputError: If k is outside [1, n].
        SizeLimitError: If k ≥ 3 and the table would exceed the cell guard.
    """
    _check_nk(n, k)
    engine = transfer_for(n)
    support = engine.support
    if k == 1:
        return engine.increment_moments(support)[:n] / n

    if k == 2:
        scale = _prefix_factor(n, 2)
        cross = engine.pair_moments(support, support)[1 : n + 1, 1 : n + 1]
        table = (cross + cross.T) * scale
        diagonal = engine.increment_moments(falling_factorial(support, 2))[:n]
        table[np.diag_indices(n)] = diagonal * scale
        return table

    cells = n**k
    if cells > PMF_TABLE_MAX_CELLS:
        raise SizeLimitError(
            "joint table exceeds the cell guard",
            n=n,
            k=k,
            cells=cells,
            limit=PMF_TABLE_MAX_CELLS,
        )
    logger.info("Building joint table tuple by tuple", n=n, k=k, cells=cells)
    table = np.zeros((n,) * k)
    for indices in product(range(1, n + 1), repeat=k):
        table[tuple(i - 1 for i in indices)] = joint_pmf(n, indices)
    return table


def product_height_expectation(n: int, indices: Sequence[int]) -> float:
    """Return E_n[Π_s (S_{i_s} + i_s)] with repeats allowed.

    Each occurrence of index t multiplies the path weight by (S_t + t) once
    the walk has taken its t-th step.

    Raises:
        InvalidInputError: If an index is outside [1, n].
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    counts: dict[int, int] = {}
    for index in indices:
        if not 1 <= index <= n:
            raise InvalidInputError("index must lie in [1, n]", index=index, n=n)
        counts[index] = counts.get(index, 0) + 1
    if not counts:
        return 1.0
    engine = transfer_for(n)
    # Column c holds height c - 1
    heights = np.arange(-1, n + 1, dtype=np.float64)
    factors = {t: np.clip(heights + t, 0.0, None) ** c for t, c in counts.items()}
    return engine.expectation(height_factors=factors)


def cdf_symmetric(n: int, k: int, a: int) -> float:
    """Return ℙ(π(1) ≤ n-a, ..., π(k) ≤ n-a).

    Equals E_n[(S_{n-a} + n - a)_k] · (n-k)!/n!, evaluated from the height
    law at time n - a with log-gamma ratios so large n does not overflow.

    Raises:
        InvalidInputError: If k is outside [1, n] or a is outside [0, n-1].
    """
    _check_nk(n, k)
    if not 0 <= a <= n - 1:
        raise InvalidInputError("a must lie in [0, n-1]", a=a, n=n)
    t = n - a
    law = transfer_for(n).height_law(t)
    slots = np.arange(-1, n + 1) + t
    usable = slots >= k
    x = slots[usable].astype(np.float64)
    ratio = np.exp(
        special.gammaln(x + 1)
        - special.gammaln(x - k + 1)
        + special.gammaln(n - k + 1)
        - special.gammaln(n + 1)
    )
    value = float(np.dot(law[usable], ratio))
    return min(max(value, 0.0), 1.0)


def increment_law(n: int, i: int) -> FloatArray:
    """Return ℙ_n(X_i = x) for x = 0..n.

    Raises:
        InvalidInputError: If i is outside [1, n+1].
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    return transfer_for(n).increment_law(i)[: n + 1]


def pair_increment_law(n: int, i: int, j: int) -> FloatArray:
    """Return ℙ_n(X_i = a, X_j = b) indexed [a, b] for a, b in 0..n.

    Raises:
        InvalidInputError: Unless 1 ≤ i < j ≤ n+1.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    return transfer_for(n).pair_law(i, j)[: n + 1, : n + 1]
