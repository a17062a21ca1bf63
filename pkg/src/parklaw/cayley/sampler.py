"""Uniform parking-function sampler through uniform Prüfer codes.

A uniform code in [0, n]^(n-1) decodes to a uniform tree on n+1 vertices,
and the breadth-first parent ranks of a uniform tree form a uniform parking
function.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from parklaw.cayley.prufer import decode_parents
from parklaw.cayley.tree import CayleyTree, parent_rank_list
from parklaw.exceptions import InvalidInputError
from parklaw.parking.functions import ParkingFunction


def _uniform_parents(n: int, rng: np.random.Generator) -> list[int]:
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    code = rng.integers(0, n + 1, size=n - 1).tolist()
    return decode_parents(code)


def sample_uniform_tree(n: int, rng: np.random.Generator) -> CayleyTree:
    """Draw a uniform tree on {0, ..., n} rooted at 0."""
    return CayleyTree.trusted(_uniform_parents(n, rng))


def sample_uniform_parking(n: int, rng: np.random.Generator) -> ParkingFunction:
    """Draw a parking function of size n uniformly among all (n+1)^(n-1).

    Args:
        n: Size, n ≥ 1.
        rng: Random stream owned by the caller.

    Returns:
        (r(1, T), ..., r(n, T)) for a uniform tree T.
    """
    return ParkingFunction.trusted(tuple(parent_rank_list(_uniform_parents(n, rng))))


def sample_tree_prefixes(
    n: int, k: int, size: int, rng: np.random.Generator
) -> npt.NDArray[np.int64]:
    """Draw ``size`` independent prefixes (π(1), ..., π(k)) via the tree sampler.

    Returns:
        Integer array of shape (size, k).
    """
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    out = np.empty((size, k), dtype=np.int64)
    for row in range(size):
        out[row] = parent_rank_list(_uniform_parents(n, rng))[:k]
    return out
