"""Dynamic programme over the Poisson(1) walk killed at -1.

The walk starts at S_0 = 0 and moves by X_t - 1 with X_t ~ Poisson(1). States
(t, h) are restricted to the region an excursion of length n+1 can visit:
height 0 at time 0, heights 0..n-t at times 1..n, and -1 at time n+1. Every
row is stored with one slot per height in [-1, n], so height h lives at
column h + 1.

Rows are rescaled to a unit peak as they are built and the scale is kept in
log space; terminal masses far below the float range (n in the thousands)
stay representable through ``log_scale``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import numpy.typing as npt
from scipy import special, stats

from parklaw.exceptions import InvalidInputError, SizeLimitError
from parklaw.utils.logging import get_logger
from parklaw.walks.constants import EXACT_DP_MAX_N
from parklaw.walks.schemas import WeightQuery

logger = get_logger(__name__)

FloatArray = npt.NDArray[np.float64]


def poisson_step_pmf(n: int) -> FloatArray:
    """Return ℙ(X = x) for X ~ Poisson(1) and x = 0..n+1."""
    return np.asarray(stats.poisson.pmf(np.arange(n + 2), 1.0), dtype=np.float64)


def falling_factorial(x: npt.ArrayLike, m: int) -> FloatArray:
    """Return (x)_m = x (x-1) ... (x-m+1), which is 0 whenever m > x."""
    return np.asarray(special.perm(x, m), dtype=np.float64)


def reachable_mask(n: int) -> npt.NDArray[np.bool_]:
    """Return the (n+2, n+2) mask of reachable (t, column) states."""
    mask = np.zeros((n + 2, n + 2), dtype=bool)
    mask[0, 1] = True
    for t in range(1, n + 1):
        mask[t, 1 : n - t + 2] = True
    mask[n + 1, 0] = True
    return mask


@dataclass(frozen=True)
class DpTable:
    """Forward table of a weighted walk; immutable once built.

    Attributes:
        n: Walk length parameter (the excursion has n+1 steps).
        rows: Shape (n+2, n+2); rows[t, h+1] is proportional to the total
            weight of paths reaching height h at time t.
        log_scale: Per-row log factor, so the true value is
            rows[t, h+1] * exp(log_scale[t]).
    """

    n: int
    rows: FloatArray
    log_scale: FloatArray

    def value(self, t: int, h: int) -> float:
        """Return the weight of state (t, h); 0 outside the reachable region."""
        if not (0 <= t <= self.n + 1 and -1 <= h <= self.n):
            return 0.0
        return float(self.rows[t, h + 1] * np.exp(self.log_scale[t]))

    @property
    def log_terminal_mass(self) -> float:
        """Return log of the weight at (n+1, -1); -inf when no path survives."""
        cell = self.rows[self.n + 1, 0]
        if cell <= 0.0:
            return float("-inf")
        return float(np.log(cell) + self.log_scale[self.n + 1])

    @property
    def terminal_mass(self) -> float:
        """Return the weight at (n+1, -1), i.e. Σ over excursions of Π weights."""
        return float(np.exp(self.log_terminal_mass))


class ExcursionTransfer:
    """Forward and backward passes for the walk conditioned on τ₋₁ = n+1.

    The unweighted passes are computed once and shared; weighted quantities
    reuse them so one-index and two-index moments cost a single convolution
    per tapped step instead of a fresh pass.

    Args:
        n: Parking function size, 1 ≤ n ≤ EXACT_DP_MAX_N.
    """

    def __init__(self, n: int) -> None:
        if n < 1:
            raise InvalidInputError("n must be >= 1", n=n)
        if n > EXACT_DP_MAX_N:
            raise SizeLimitError(
                "n exceeds the transfer guard", n=n, limit=EXACT_DP_MAX_N
            )
        self.n = n
        self.width = n + 2
        self.step_pmf = poisson_step_pmf(n)
        self.mask = reachable_mask(n)
        self.support = np.arange(n + 2, dtype=np.float64)

    def _advance(
        self, row: FloatArray, t: int, step_weight: FloatArray | None = None
    ) -> tuple[FloatArray, float]:
        """Push a row at time t-1 one step forward, returning (row, log shift)."""
        weights = self.step_pmf if step_weight is None else self.step_pmf * step_weight
        # Column 0 (height -1) is empty before the final step
        moved = np.convolve(row[1:], weights)[: self.width]
        moved = np.where(self.mask[t], moved, 0.0)
        return _rescale(moved)

    def _retreat(self, row: FloatArray, t: int) -> tuple[FloatArray, float]:
        """Pull a backward row at time t to time t-1."""
        pulled = np.convolve(row, self.step_pmf[::-1])
        back = np.zeros(self.width)
        back[1:] = pulled[self.width - 1 : 2 * self.width - 2]
        back = np.where(self.mask[t - 1], back, 0.0)
        return _rescale(back)

    def run(
        self,
        step_factors: Mapping[int, FloatArray] | None = None,
        height_factors: Mapping[int, FloatArray] | None = None,
    ) -> DpTable:
        """Build the forward table with optional multiplicative weights.

        Args:
            step_factors: Time t ↦ factor indexed by the increment x, applied
                on top of the Poisson(1) weight of step t.
            height_factors: Time t ↦ factor indexed by column (h + 1),
                applied to the state after step t.

        Returns:
            DpTable whose terminal mass is E[Π weights; τ₋₁ = n+1].
        """
        step_factors = step_factors or {}
        height_factors = height_factors or {}
        rows = np.zeros((self.width, self.width))
        log_scale = np.zeros(self.width)
        rows[0, 1] = 1.0
        for t in range(1, self.n + 2):
            row, shift = self._advance(rows[t - 1], t, step_factors.get(t))
            if t in height_factors:
                row, extra = _rescale(row * height_factors[t])
                shift += extra
            rows[t] = row
            log_scale[t] = log_scale[t - 1] + shift
        return DpTable(n=self.n, rows=rows, log_scale=log_scale)

    @cached_property
    def forward(self) -> DpTable:
        """Return the unweighted forward table."""
        table = self.run()
        logger.debug(
            "Built forward transfer", n=self.n, log_mass=table.log_terminal_mass
        )
        return table

    @cached_property
    def backward(self) -> DpTable:
        """Return the backward table.

        rows[t, h+1] is proportional to ℙ(reach (n+1, -1) | S_t = h).
        """
        rows = np.zeros((self.width, self.width))
        log_scale = np.zeros(self.width)
        rows[self.n + 1, 0] = 1.0
        for t in range(self.n + 1, 0, -1):
            row, shift = self._retreat(rows[t], t)
            rows[t - 1] = row
            log_scale[t - 1] = log_scale[t] + shift
        return DpTable(n=self.n, rows=rows, log_scale=log_scale)

    @property
    def log_mass(self) -> float:
        """Return log ℙ(τ₋₁ = n+1)."""
        return self.forward.log_terminal_mass

    def expectation(
        self,
        step_factors: Mapping[int, FloatArray] | None = None,
        height_factors: Mapping[int, FloatArray] | None = None,
    ) -> float:
        """Return E_n[Π weights] as a ratio of weighted to unweighted mass."""
        table = self.run(step_factors, height_factors)
        log_weighted = table.log_terminal_mass
        if log_weighted == float("-inf"):
            return 0.0
        return float(np.exp(log_weighted - self.log_mass))

    def _tap(
        self, left: FloatArray, left_log: float, t: int, weight: FloatArray
    ) -> float:
        """Return E_n of the ``weight``-weighted step t, entered from a forward row."""
        moved = np.convolve(left[1:], self.step_pmf * weight)[: self.width]
        moved = np.where(self.mask[t], moved, 0.0)
        back = self.backward
        total = float(np.dot(moved, back.rows[t]))
        if total == 0.0:
            return 0.0
        return float(total * np.exp(left_log + back.log_scale[t] - self.log_mass))

    def increment_moments(self, f: FloatArray) -> FloatArray:
        """Return E_n[f(X_t)] for t = 1..n+1 (entry t-1).

        Args:
            f: Values f(0), ..., f(n+1).
        """
        fwd = self.forward
        return np.array(
            [
                self._tap(fwd.rows[t - 1], float(fwd.log_scale[t - 1]), t, f)
                for t in range(1, self.n + 2)
            ]
        )

    def increment_law(self, t: int) -> FloatArray:
        """Return ℙ_n(X_t = x) for x = 0..n+1."""
        if not 1 <= t <= self.n + 1:
            raise InvalidInputError("step index must lie in [1, n+1]", t=t, n=self.n)
        fwd, back = self.forward, self.backward
        left = fwd.rows[t - 1, 1:]
        right = back.rows[t]
        law = np.zeros(self.width)
        for x in range(self.width):
            # Height h moves to h + x - 1, stored at column h + x
            span = min(left.size, self.width - x)
            law[x] = self.step_pmf[x] * float(np.dot(left[:span], right[x : x + span]))
        scale = fwd.log_scale[t - 1] + back.log_scale[t] - self.log_mass
        return law * np.exp(scale)

    def height_law(self, t: int) -> FloatArray:
        """Return ℙ_n(S_t = h) at column h + 1, for h = -1..n."""
        if not 0 <= t <= self.n + 1:
            raise InvalidInputError("time must lie in [0, n+1]", t=t, n=self.n)
        fwd, back = self.forward, self.backward
        scale = fwd.log_scale[t] + back.log_scale[t] - self.log_mass
        return np.asarray(fwd.rows[t] * back.rows[t] * np.exp(scale))

    def pair_moments(self, f: FloatArray, g: FloatArray) -> FloatArray:
        """Return E_n[f(X_i) g(X_j)] for 1 ≤ i < j ≤ n+1.

        One forward sweep starts at every i with the f-weighted step, and the
        g-weighted step is tapped against the backward table at each later j.

        Returns:
            Array of shape (n+2, n+2) with entry [i, j] filled for i < j and
            zeros elsewhere.
        """
        fwd = self.forward
        out = np.zeros((self.width, self.width))
        for i in range(1, self.n + 1):
            row, shift = self._advance(fwd.rows[i - 1], i, f)
            log_row = float(fwd.log_scale[i - 1]) + shift
            for j in range(i + 1, self.n + 2):
                if not row.any():
                    break
                out[i, j] = self._tap(row, log_row, j, g)
                row, shift = self._advance(row, j)
                log_row += shift
        return out

    def pair_law(self, i: int, j: int) -> FloatArray:
        """Return ℙ_n(X_i = a, X_j = b) as an array indexed [a, b], i < j."""
        if not 1 <= i < j <= self.n + 1:
            raise InvalidInputError("need 1 <= i < j <= n+1", i=i, j=j, n=self.n)
        fwd = self.forward
        law = np.zeros((self.width, self.width))
        for a in range(self.width):
            indicator = np.zeros(self.width)
            indicator[a] = 1.0
            row, shift = self._advance(fwd.rows[i - 1], i, indicator)
            log_row = float(fwd.log_scale[i - 1]) + shift
            for t in range(i + 1, j):
                row, shift = self._advance(row, t)
                log_row += shift
            if not row.any():
                continue
            for b in range(self.width):
                indicator = np.zeros(self.width)
                indicator[b] = 1.0
                law[a, b] = self._tap(row, log_row, j, indicator)
        return law


def _rescale(row: FloatArray) -> tuple[FloatArray, float]:
    peak = float(row.max())
    if peak <= 0.0:
        return row, 0.0
    return row / peak, float(np.log(peak))


@lru_cache(maxsize=32)
def transfer_for(n: int) -> ExcursionTransfer:
    """Return the shared transfer engine for size n."""
    return ExcursionTransfer(n)


def query_factors(n: int, query: WeightQuery) -> dict[int, FloatArray]:
    """Turn a query into per-step falling-factorial weight vectors."""
    support = np.arange(n + 2)
    return {index: falling_factorial(support, m) for index, m in query.entries}


def _check_query(n: int, query: WeightQuery) -> None:
    for index, _ in query.entries:
        if index > n + 1:
            raise InvalidInputError("query index exceeds n+1", index=index, n=n)
    if query.k > n:
        raise InvalidInputError("query weight exceeds n", k=query.k, n=n)


def dp_build(n: int, query: WeightQuery | None = None) -> DpTable:
    """Build the weighted forward table for a falling-factorial query.

    Args:
        n: Size, n ≥ 1.
        query: Weights (X_{j_s})_{m_s}; None gives the plain walk.

    Returns:
        DpTable whose terminal mass is E[Π (X_{j_s})_{m_s}; τ₋₁ = n+1]
        under the unconditioned Poisson(1) walk.

    Raises:
        InvalidInputError: If n < 1 or the query reaches past n+1 or
            accounts for more than n places.
    """
    engine = transfer_for(n)
    if query is None or not query.entries:
        return engine.forward
    _check_query(n, query)
    return engine.run(step_factors=query_factors(n, query))


def conditioned_expectation(n: int, query: WeightQuery) -> float:
    """Return E_n[Π_s (X_{j_s})_{m_s}].

    Raises:
        InvalidInputError: If the query is out of range for n.
    """
    engine = transfer_for(n)
    if not query.entries:
        return 1.0
    _check_query(n, query)
    return engine.expectation(step_factors=query_factors(n, query))
