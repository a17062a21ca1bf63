"""Tests for the conditioned-walk transfer tables."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import special

from parklaw.exceptions import InvalidInputError, SizeLimitError
from parklaw.walks import (
    EXACT_DP_MAX_N,
    ExcursionTransfer,
    WeightQuery,
    conditioned_expectation,
    dp_build,
    falling_factorial,
    transfer_for,
)


def _log_borel(n: int) -> float:
    """log ℙ(τ₋₁ = n+1) = log(e^{-(n+1)} (n+1)^n / (n+1)!)."""
    return -(n + 1) + n * math.log(n + 1) - float(special.gammaln(n + 2))


class TestDpBuild:
    """Tests for dp_build and DpTable."""

    def test_n1_terminal_mass(self) -> None:
        assert dp_build(1).terminal_mass == pytest.approx(math.exp(-2), rel=1e-12)

    def test_n2_terminal_mass(self) -> None:
        assert dp_build(2).terminal_mass == pytest.approx(1.5 * math.exp(-3), rel=1e-12)

    @pytest.mark.parametrize("n", [5, 50, 500, EXACT_DP_MAX_N])
    def test_terminal_mass_is_total_progeny_law(self, n: int) -> None:
        assert dp_build(n).log_terminal_mass == pytest.approx(_log_borel(n), rel=1e-9)

    def test_query_ratio_gives_mean_first_increment(self) -> None:
        weighted = dp_build(2, WeightQuery(entries=((1, 1),)))
        assert weighted.terminal_mass / dp_build(2).terminal_mass == pytest.approx(
            4 / 3, abs=1e-12
        )

    def test_value_lookup(self) -> None:
        table = dp_build(2)
        # Only X_1 ∈ {1, 2} survives the first step
        assert table.value(1, 0) == pytest.approx(math.exp(-1), rel=1e-12)
        assert table.value(1, 1) == pytest.approx(math.exp(-1) / 2, rel=1e-12)
        assert table.value(1, -1) == 0.0
        assert table.value(2, 1) == 0.0
        assert table.value(7, 0) == 0.0

    def test_heights_confined(self) -> None:
        table = dp_build(6)
        for t in range(1, 7):
            assert np.all(table.rows[t, 6 - t + 2 :] == 0.0)
            assert table.rows[t, 0] == 0.0

    def test_query_beyond_horizon_raises(self) -> None:
        with pytest.raises(InvalidInputError, match="exceeds n\\+1"):
            dp_build(2, WeightQuery(entries=((4, 1),)))

    def test_query_weight_above_n_raises(self) -> None:
        with pytest.raises(InvalidInputError, match="exceeds n"):
            dp_build(2, WeightQuery(entries=((1, 3),)))


class TestConditionedExpectation:
    """Tests for conditioned_expectation."""

    def test_n1_first_increment(self) -> None:
        query = WeightQuery(entries=((1, 1),))
        assert conditioned_expectation(1, query) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize(
        ("entries", "expected"),
        [(((1, 1),), 4 / 3), (((2, 1),), 2 / 3), (((1, 2),), 2 / 3)],
    )
    def test_n2_identities(
        self, entries: tuple[tuple[int, int], ...], expected: float
    ) -> None:
        value = conditioned_expectation(2, WeightQuery(entries=entries))
        assert value == pytest.approx(expected, abs=1e-12)

    def test_empty_query_is_one(self) -> None:
        assert conditioned_expectation(4, WeightQuery()) == 1.0

    def test_last_increment_is_zero(self) -> None:
        assert conditioned_expectation(3, WeightQuery(entries=((4, 1),))) == 0.0


class TestExcursionTransfer:
    """Tests for the forward/backward engine."""

    def test_guards(self) -> None:
        with pytest.raises(InvalidInputError):
            ExcursionTransfer(0)
        with pytest.raises(SizeLimitError):
            ExcursionTransfer(EXACT_DP_MAX_N + 1)

    def test_engine_is_shared(self) -> None:
        assert transfer_for(9) is transfer_for(9)

    @pytest.mark.parametrize("n", [1, 4, 37])
    def test_height_laws_are_probabilities(self, n: int) -> None:
        engine = transfer_for(n)
        for t in range(n + 2):
            assert engine.height_law(t).sum() == pytest.approx(1.0, abs=1e-10)

    def test_height_law_endpoints(self) -> None:
        engine = transfer_for(6)
        np.testing.assert_allclose(engine.height_law(0)[1], 1.0, atol=1e-12)
        np.testing.assert_allclose(engine.height_law(6)[1], 1.0, atol=1e-12)
        np.testing.assert_allclose(engine.height_law(7)[0], 1.0, atol=1e-12)

    def test_increment_moments_sum_to_n(self) -> None:
        engine = transfer_for(25)
        total = engine.increment_moments(engine.support).sum()
        assert total == pytest.approx(25, rel=1e-10)

    def test_increment_law_matches_moments(self) -> None:
        engine = transfer_for(8)
        for t in (1, 4, 9):
            law = engine.increment_law(t)
            assert law.sum() == pytest.approx(1.0, abs=1e-12)
            mean = engine.increment_moments(engine.support)[t - 1]
            assert float(np.dot(law, engine.support)) == pytest.approx(mean, abs=1e-12)

    def test_pair_moments_match_single_pass(self) -> None:
        engine = transfer_for(7)
        pairs = engine.pair_moments(engine.support, engine.support)
        for i, j in [(1, 2), (2, 5), (3, 8)]:
            query = WeightQuery(entries=((i, 1), (j, 1)))
            expected = conditioned_expectation(7, query)
            assert pairs[i, j] == pytest.approx(expected, abs=1e-12)

    def test_pair_law_marginals(self) -> None:
        engine = transfer_for(6)
        law = engine.pair_law(2, 4)
        assert law.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(law.sum(axis=1), engine.increment_law(2), atol=1e-12)
        np.testing.assert_allclose(law.sum(axis=0), engine.increment_law(4), atol=1e-12)

    def test_pair_law_rejects_unordered(self) -> None:
        with pytest.raises(InvalidInputError):
            transfer_for(4).pair_law(3, 3)


class TestFallingFactorial:
    """Tests for falling_factorial."""

    def test_values(self) -> None:
        np.testing.assert_array_equal(
            falling_factorial(np.arange(5), 2), [0.0, 0.0, 2.0, 6.0, 12.0]
        )

    def test_zero_when_m_exceeds_x(self) -> None:
        assert falling_factorial(np.array([2]), 3)[0] == 0.0
