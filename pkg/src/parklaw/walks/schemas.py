"""Domain types for the Poisson(1) walk conditioned on τ₋₁ = n+1."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from typing import Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, model_validator


class ExcursionPath(BaseModel, frozen=True):
    """Increments (X_1, ..., X_{n+1}) of an excursion of length n+1.

    With S_m = Σ_{i ≤ m} (X_i - 1), the path stays nonnegative up to time n
    and first hits -1 at time n+1, so the increments sum to n.

    Attributes:
        x: Nonnegative increments, length n+1.
    """

    x: tuple[int, ...] = Field(..., min_length=2)

    @model_validator(mode="after")
    def _check_excursion(self) -> Self:
        height = 0
        for time, step in enumerate(self.x, start=1):
            if step < 0:
                raise ValueError(f"increment X_{time} = {step} is negative")
            height += step - 1
            if time < len(self.x) and height < 0:
                raise ValueError(f"walk hits -1 early, at time {time}")
        if height != -1:
            raise ValueError(f"increments sum to {sum(self.x)}, expected {self.n}")
        return self

    @property
    def n(self) -> int:
        """Return n (the path has n+1 steps)."""
        return len(self.x) - 1

    def heights(self) -> npt.NDArray[np.int64]:
        """Return (S_0, S_1, ..., S_{n+1})."""
        steps = np.asarray(self.x, dtype=np.int64) - 1
        return np.concatenate(([0], np.cumsum(steps)))

    @classmethod
    def trusted(cls, x: Iterable[int]) -> Self:
        """Wrap increments produced by the cycle-lemma sampler."""
        return cls.model_construct(x=tuple(int(v) for v in x))


class WeightQuery(BaseModel, frozen=True):
    """Falling-factorial weights (X_{j_s})_{m_s} at distinct step indices.

    Attributes:
        entries: Pairs (j_s, m_s) with distinct indices j_s ≥ 1 and m_s ≥ 1.
    """

    entries: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_entries(self) -> Self:
        indices = [index for index, _ in self.entries]
        if len(set(indices)) != len(indices):
            raise ValueError(f"query indices must be distinct, got {indices}")
        for index, multiplicity in self.entries:
            if index < 1 or multiplicity < 1:
                raise ValueError(
                    "index and multiplicity must be >= 1, "
                    f"got ({index}, {multiplicity})"
                )
        return self

    @property
    def k(self) -> int:
        """Return Σ m_s, the number of places the query accounts for."""
        return sum(multiplicity for _, multiplicity in self.entries)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Self:
        """Collapse (i_1, ..., i_k) into distinct indices with multiplicities."""
        counts = Counter(indices)
        return cls(entries=tuple(sorted(counts.items())))
