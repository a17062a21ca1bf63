"""Tests for the total-variation and Kolmogorov distances."""

from __future__ import annotations

import math

import numpy as np
import pytest

from parklaw.exceptions import InvalidInputError, MethodError
from parklaw.stats.distances import (
    _block_ecdf,
    _diagonal_deviation,
    cumulative,
    kolmogorov_distance,
    tv_distance,
    uniform_cdf_grid,
)
from parklaw.stats.schemas import Method


class TestTvDistance:
    """Tests for tv_distance."""

    def test_n2_k1(self) -> None:
        report = tv_distance(2, 1)
        assert report.value == pytest.approx(1 / 3, abs=1e-12)
        assert report.method is Method.EXACT_DP

    def test_n1_is_zero(self) -> None:
        assert tv_distance(1, 1).value == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_dp_matches_enumeration(self, n: int) -> None:
        for k in (1, 2):
            dp = tv_distance(n, k, Method.EXACT_DP).value
            enum = tv_distance(n, k, "exact-enumeration").value
            assert dp == pytest.approx(enum, abs=1e-10)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_nondecreasing_in_k(self, n: int) -> None:
        values = [tv_distance(n, k, Method.EXACT_ENUMERATION).value for k in (1, 2, 3)]
        assert values[0] <= values[1] + 1e-12
        assert values[1] <= values[2] + 1e-12

    def test_sqrt_n_scaling_band(self) -> None:
        scaled = [math.sqrt(n) * tv_distance(n, 1).value for n in (50, 100, 200)]
        assert max(scaled) <= 2 * min(scaled)

    def test_auto_falls_back_to_enumeration(self) -> None:
        assert tv_distance(5, 3).method is Method.EXACT_ENUMERATION

    @pytest.mark.parametrize(
        ("n", "k", "method"),
        [
            (10, 1, Method.MONTE_CARLO),
            (201, 1, Method.EXACT_DP),
            (10, 3, Method.EXACT_DP),
            (7, 1, Method.EXACT_ENUMERATION),
            (10, 3, Method.AUTO),
        ],
    )
    def test_infeasible_methods(self, n: int, k: int, method: Method) -> None:
        with pytest.raises(MethodError):
            tv_distance(n, k, method)

    def test_rejects_bad_k(self) -> None:
        with pytest.raises(InvalidInputError):
            tv_distance(3, 4)


class TestKolmogorovDistance:
    """Tests for kolmogorov_distance."""

    def test_n2_k1(self) -> None:
        assert kolmogorov_distance(2, 1).value == pytest.approx(1 / 6, abs=1e-12)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_dp_matches_enumeration(self, n: int) -> None:
        for k in (1, 2):
            dp = kolmogorov_distance(n, k, Method.EXACT_DP).value
            enum = kolmogorov_distance(n, k, Method.EXACT_ENUMERATION).value
            assert dp == pytest.approx(enum, abs=1e-10)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_nondecreasing_in_k(self, n: int) -> None:
        values = [
            kolmogorov_distance(n, k, Method.EXACT_ENUMERATION).value for k in (1, 2, 3)
        ]
        assert values[0] <= values[1] + 1e-12
        assert values[1] <= values[2] + 1e-12

    @pytest.mark.parametrize(
        ("n", "k"), [(n, k) for n in range(1, 7) for k in range(1, min(n, 3) + 1)]
    )
    def test_bounded_by_total_variation(self, n: int, k: int) -> None:
        assert kolmogorov_distance(n, k).value <= tv_distance(n, k).value + 1e-12

    def test_auto_uses_monte_carlo_beyond_exact_guards(self) -> None:
        report = kolmogorov_distance(12, 3, samples=400, seed=1)
        assert report.method is Method.MONTE_CARLO
        assert report.samples == 400
        assert report.lower_bound

    def test_monte_carlo_is_reproducible(self) -> None:
        mc = Method.MONTE_CARLO
        first = kolmogorov_distance(30, 2, mc, samples=700, seed=11)
        again = kolmogorov_distance(30, 2, mc, samples=700, seed=11, threads=3)
        other = kolmogorov_distance(30, 2, mc, samples=700, seed=12)
        assert first == again
        assert first.value != other.value
        assert not first.lower_bound

    def test_monte_carlo_tracks_exact_value(self) -> None:
        exact = kolmogorov_distance(6, 2).value
        estimate = kolmogorov_distance(6, 2, Method.MONTE_CARLO, samples=20_000, seed=5)
        assert estimate.stderr > 0.0
        assert abs(estimate.value - exact) < 0.03

    def test_random_grid_tracks_exact_value(self) -> None:
        exact = kolmogorov_distance(6, 3, Method.EXACT_ENUMERATION).value
        estimate = kolmogorov_distance(6, 3, Method.MONTE_CARLO, samples=20_000, seed=2)
        assert estimate.lower_bound
        assert abs(estimate.value - exact) < 0.03

    @pytest.mark.slow
    def test_decreases_when_k_grows_like_n_to_three_quarters(self) -> None:
        values = []
        for n in (64, 1024, 16_384):
            k = math.floor(n**0.75)
            report = kolmogorov_distance(
                n, k, Method.MONTE_CARLO, samples=10_000, seed=0, threads=4
            )
            values.append(report.value)
        assert values[0] > values[1] > values[2]

    def test_monte_carlo_needs_samples(self) -> None:
        with pytest.raises(InvalidInputError, match="samples"):
            kolmogorov_distance(12, 3, Method.MONTE_CARLO)


class TestGrids:
    """Tests for the grid helpers."""

    def test_uniform_cdf_grid(self) -> None:
        np.testing.assert_allclose(
            uniform_cdf_grid(2, 2), [[0.25, 0.5], [0.5, 1.0]], atol=1e-15
        )

    def test_cumulative_of_uniform_table(self) -> None:
        table = np.full((3, 3, 3), 1 / 27)
        expected = uniform_cdf_grid(3, 3)
        np.testing.assert_allclose(cumulative(table), expected, atol=1e-15)

    def test_block_ecdf_matches_direct_comparison(self) -> None:
        rng = np.random.default_rng(3)
        prefixes = rng.integers(1, 9, size=(200, 5))
        block = rng.integers(1, 9, size=(40, 5))
        direct = (prefixes[:, None, :] <= block[None, :, :]).all(axis=2).mean(axis=0)
        np.testing.assert_allclose(_block_ecdf(prefixes, block), direct, atol=1e-15)

    def test_diagonal_deviation(self) -> None:
        prefixes = np.array([[1, 1], [1, 2], [2, 1], [2, 2]])
        # ECDF of the row maxima is 1/4 at v = 1 and 1 at v = 2
        value, at_cdf = _diagonal_deviation(prefixes, 2)
        assert value == pytest.approx(0.0, abs=1e-15)
        assert at_cdf == pytest.approx(0.25)

        value, at_cdf = _diagonal_deviation(np.array([[1, 1], [1, 1]]), 2)
        assert value == pytest.approx(0.75)
        assert at_cdf == pytest.approx(1.0)
