"""Parking functions: definition, validity check and first-place statistics.

A parking function of size n is a map π: [1, n] → [1, n] whose nondecreasing
rearrangement π' satisfies π'(i) ≤ i for every i.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Self

from pydantic import BaseModel, Field, field_validator

from parklaw.exceptions import InvalidInputError


def is_parking(places: Sequence[int]) -> bool:
    """Check whether a sequence of 1-based places is a parking function.

    Args:
        places: Parking places (π(1), ..., π(n)), each a positive integer.

    Returns:
        True iff every entry is at most n and the sorted sequence satisfies
        π'(i) ≤ i.

    Raises:
        InvalidInputError: If the sequence is empty or holds a nonpositive entry.
    """
    if len(places) == 0:
        raise InvalidInputError("places must not be empty")
    n = len(places)
    for rank, place in enumerate(sorted(places), start=1):
        if place < 1:
            raise InvalidInputError("places must be positive integers", place=place)
        if place > rank or place > n:
            return False
    return True


class ParkingFunction(BaseModel, frozen=True):
    """A parking function of size n, stored as its 1-based places.

    Attributes:
        places: (π(1), ..., π(n)) with every entry in [1, n].
    """

    places: tuple[int, ...] = Field(..., min_length=1)

    @field_validator("places")
    @classmethod
    def _check_rearrangement(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not is_parking(value):
            raise ValueError(f"{value} is not a parking function")
        return value

    @property
    def n(self) -> int:
        """Return the size of the parking function."""
        return len(self.places)

    @classmethod
    def from_places(cls, places: Sequence[int]) -> Self:
        """Create a validated ParkingFunction from any integer sequence."""
        return cls(places=tuple(int(p) for p in places))

    @classmethod
    def trusted(cls, places: tuple[int, ...]) -> Self:
        """Wrap places already known to be a parking function, skipping checks.

        Used by enumeration and samplers whose construction guarantees validity.
        """
        return cls.model_construct(places=places)


def _check_prefix(p: ParkingFunction, k: int) -> None:
    if not 1 <= k <= p.n:
        raise InvalidInputError("k must lie in [1, n]", k=k, n=p.n)


def statistic_sum(p: ParkingFunction, k: int) -> int:
    """Return π(1) + ... + π(k).

    Raises:
        InvalidInputError: If k is outside [1, n].
    """
    _check_prefix(p, k)
    return sum(p.places[:k])


def statistic_max(p: ParkingFunction, k: int) -> int:
    """Return max{π(1), ..., π(k)}.

    Raises:
        InvalidInputError: If k is outside [1, n].
    """
    _check_prefix(p, k)
    return max(p.places[:k])
