"""Exact excursion sampling through the cycle lemma.

n+1 iid Poisson(1) increments conditioned to sum to n are Multinomial(n)
over n+1 equally likely cells. Rotating such a sequence to start just after
the first minimum of its partial sums yields a walk that first hits -1 at
time n+1, and the rotation is uniform over the n+1 cyclic shifts, so the
rotated sequence is distributed as the conditioned excursion.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from parklaw.exceptions import InvalidInputError
from parklaw.walks.schemas import ExcursionPath

IntArray = npt.NDArray[np.int64]


def sample_conditioned_increments(n: int, rng: np.random.Generator) -> IntArray:
    """Draw (ξ_1 + 1, ..., ξ_{n+1} + 1) given that the increments sum to n.

    Counting where n uniform throws land among n+1 cells is exactly a
    Multinomial(n; 1/(n+1), ..., 1/(n+1)) draw.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    throws = rng.integers(0, n + 1, size=n)
    return np.bincount(throws, minlength=n + 1).astype(np.int64)


def cycle_rotation(x: Sequence[int] | IntArray) -> int:
    """Return the rotation ρ that turns a bridge into an excursion.

    With ξ = x - 1 summing to -1, ρ is one past the first index at which the
    partial sums of ξ attain their minimum, taken modulo the length.

    Raises:
        InvalidInputError: If an entry is negative or Σ ξ ≠ -1.
    """
    steps = np.asarray(x, dtype=np.int64)
    if steps.size == 0 or (steps < 0).any():
        raise InvalidInputError("increments must be nonnegative and nonempty")
    if int(steps.sum()) != steps.size - 1:
        raise InvalidInputError(
            "increments must sum to length - 1",
            total=int(steps.sum()),
            length=int(steps.size),
        )
    partial = np.cumsum(steps - 1)
    return int((np.argmin(partial) + 1) % steps.size)


def _excursion(n: int, rng: np.random.Generator) -> IntArray:
    bridge = sample_conditioned_increments(n, rng)
    return np.roll(bridge, -cycle_rotation(bridge))


def sample_excursion(n: int, rng: np.random.Generator) -> ExcursionPath:
    """Draw the increments of the Poisson(1) walk conditioned on τ₋₁ = n+1.

    Args:
        n: Size, n ≥ 1.
        rng: Random stream owned by the caller.

    Returns:
        ExcursionPath with n+1 increments.
    """
    return ExcursionPath.trusted(_excursion(n, rng).tolist())


def sample_parking_prefix(n: int, k: int, rng: np.random.Generator) -> IntArray:
    """Draw (π(1), ..., π(k)) of a uniform parking function from an excursion.

    Place t appears X_t times in a uniform parking function whose excursion
    is X, and given the counts every arrangement is equally likely, so k
    distinct positions of the multiset {t^{X_t}} give the first k places.

    Raises:
        InvalidInputError: If k is outside [1, n].
    """
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    counts = _excursion(n, rng)
    places = np.repeat(np.arange(1, n + 2, dtype=np.int64), counts)
    return places[rng.choice(n, size=k, replace=False)]


def sample_walk_prefixes(
    n: int, k: int, size: int, rng: np.random.Generator
) -> IntArray:
    """Draw ``size`` independent prefixes with the excursion sampler.

    Returns:
        Integer array of shape (size, k).
    """
    out = np.empty((size, k), dtype=np.int64)
    for row in range(size):
        out[row] = sample_parking_prefix(n, k, rng)
    return out


def sample_excursion_heights(
    n: int, t: int, size: int, rng: np.random.Generator
) -> IntArray:
    """Draw ``size`` independent values of S_t under the conditioned walk.

    Raises:
        InvalidInputError: If t is outside [0, n+1].
    """
    if not 0 <= t <= n + 1:
        raise InvalidInputError("time must lie in [0, n+1]", t=t, n=n)
    out = np.zeros(size, dtype=np.int64)
    if t == 0:
        return out
    for row in range(size):
        out[row] = int(_excursion(n, rng)[:t].sum()) - t
    return out
