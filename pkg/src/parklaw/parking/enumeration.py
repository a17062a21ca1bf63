"""Exhaustive enumeration of parking functions and the brute-force oracle.

Parking functions are generated as nondecreasing rearrangements first (there
are only Catalan-many of them) and then expanded into their distinct
permutations, which is far cheaper than filtering all n^n maps.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np
import numpy.typing as npt
from sympy.utilities.iterables import multiset_permutations

from parklaw.exceptions import InvalidInputError, SizeLimitError
from parklaw.parking.constants import ENUMERATION_MAX_N, ORACLE_MAX_N
from parklaw.parking.functions import ParkingFunction
from parklaw.utils.logging import get_logger

logger = get_logger(__name__)


def _check_size(n: int, limit: int) -> None:
    if n < 1:
        raise InvalidInputError("n must be >= 1", n=n)
    if n > limit:
        raise SizeLimitError("n exceeds the enumeration guard", n=n, limit=limit)


def iter_nondecreasing_parking(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every nondecreasing parking function of size n.

    These are the sequences 1 ≤ s_1 ≤ ... ≤ s_n with s_i ≤ i, in
    lexicographic order.
    """
    prefix: list[int] = []

    def extend(position: int) -> Iterator[tuple[int, ...]]:
        if position > n:
            yield tuple(prefix)
            return
        low = prefix[-1] if prefix else 1
        for value in range(low, position + 1):
            prefix.append(value)
            yield from extend(position + 1)
            prefix.pop()

    yield from extend(1)


def _multiset_size(counts: Counter[int]) -> int:
    total = math.factorial(sum(counts.values()))
    for multiplicity in counts.values():
        total //= math.factorial(multiplicity)
    return total


def enumerate_parking(n: int) -> list[ParkingFunction]:
    """Return all parking functions of size n in lexicographic order.

    Args:
        n: Size, 1 ≤ n ≤ 8.

    Returns:
        The (n+1)^(n-1) parking functions, each exactly once.

    Raises:
        SizeLimitError: If n exceeds the enumeration guard.
    """
    _check_size(n, ENUMERATION_MAX_N)
    places: list[tuple[int, ...]] = []
    for sorted_places in iter_nondecreasing_parking(n):
        places.extend(tuple(p) for p in multiset_permutations(list(sorted_places)))
    places.sort()
    logger.debug("Enumerated parking functions", n=n, count=len(places))
    return [ParkingFunction.trusted(p) for p in places]


def count_parking(n: int) -> int:
    """Count parking functions of size n without materialising them.

    Sums the number of distinct permutations of every nondecreasing parking
    function; agrees with (n+1)^(n-1).
    """
    _check_size(n, ENUMERATION_MAX_N)
    return sum(
        _multiset_size(Counter(sorted_places))
        for sorted_places in iter_nondecreasing_parking(n)
    )


@dataclass(frozen=True)
class ExactPmf:
    """Exact joint law of the first k places of a uniform parking function.

    Attributes:
        n: Parking function size.
        k: Number of leading coordinates.
        table: Probability of each k-tuple with positive mass. Tuples of
            [1, n]^k missing from the table have probability 0.
    """

    n: int
    k: int
    table: dict[tuple[int, ...], Fraction]

    def probability(self, indices: tuple[int, ...]) -> Fraction:
        """Return ℙ(π(1..k) = indices)."""
        return self.table.get(indices, Fraction(0))

    def total(self) -> Fraction:
        """Return the total mass (exactly 1 for an oracle table)."""
        return sum(self.table.values(), Fraction(0))

    def marginal(self, k: int) -> ExactPmf:
        """Return the law of the first k coordinates (k ≤ self.k)."""
        if not 1 <= k <= self.k:
            raise InvalidInputError("marginal size must lie in [1, k]", k=k)
        reduced: dict[tuple[int, ...], Fraction] = {}
        for indices, mass in self.table.items():
            key = indices[:k]
            reduced[key] = reduced.get(key, Fraction(0)) + mass
        return ExactPmf(n=self.n, k=k, table=reduced)

    def to_array(self) -> npt.NDArray[np.float64]:
        """Return the dense table of shape (n,)*k, index i-1 for place i."""
        dense = np.zeros((self.n,) * self.k, dtype=np.float64)
        for indices in product(range(1, self.n + 1), repeat=self.k):
            dense[tuple(i - 1 for i in indices)] = float(self.probability(indices))
        return dense


def oracle_joint_pmf(n: int, k: int) -> ExactPmf:
    """Compute the joint law of (π(1), ..., π(k)) by exhaustive enumeration.

    For each nondecreasing parking function, every distinct k-prefix of its
    permutations is counted with the number of ways to arrange the remaining
    multiset, so no full permutation is ever materialised.

    Args:
        n: Size, 1 ≤ n ≤ 7.
        k: Number of leading coordinates, 1 ≤ k ≤ n.

    Returns:
        ExactPmf with exact rational probabilities.

    Raises:
        SizeLimitError: If n exceeds the oracle guard.
        InvalidInputError: If k is outside [1, n].
    """
    _check_size(n, ORACLE_MAX_N)
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)

    counts: Counter[tuple[int, ...]] = Counter()
    for sorted_places in iter_nondecreasing_parking(n):
        multiset = Counter(sorted_places)
        for prefix in multiset_permutations(list(sorted_places), k):
            rest = multiset - Counter(prefix)
            counts[tuple(prefix)] += _multiset_size(rest)

    total = (n + 1) ** (n - 1)
    table = {indices: Fraction(c, total) for indices, c in sorted(counts.items())}
    return ExactPmf(n=n, k=k, table=table)
