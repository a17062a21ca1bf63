"""Exact-oracle suites run by ``parklaw selftest``."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from itertools import product

import numpy as np

from parklaw.cayley.prufer import prufer_decode, prufer_encode
from parklaw.cayley.tree import (
    EXAMPLE_TREE,
    bfs_ranks,
    iter_cayley_trees,
    tree_to_parking,
)
from parklaw.config import settings
from parklaw.parking.enumeration import enumerate_parking, oracle_joint_pmf
from parklaw.stats.goodness import chi_square_pvalue
from parklaw.stats.replicates import sample_prefixes
from parklaw.utils.logging import get_logger
from parklaw.walks.excursions import cycle_rotation
from parklaw.walks.laws import joint_pmf_table

logger = get_logger(__name__)

COUNT_MAX_N = 7
BIJECTION_MAX_M = 5
DP_ORACLE_MAX_N = 5
DP_ORACLE_MAX_K = 2
DP_ORACLE_TOLERANCE = 1e-10
CYCLE_LEMMA_MAX_N = 4
GOF_N = 3
GOF_SAMPLES = 16_000


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one self-test suite."""

    suite: str
    passed: bool
    detail: str


def check_counts() -> SuiteResult:
    """Enumeration yields (n+1)^(n-1) parking functions."""
    for n in range(1, COUNT_MAX_N + 1):
        found = len(enumerate_parking(n))
        if found != (n + 1) ** (n - 1):
            return SuiteResult("counts", False, f"n={n}: found {found}")
    return SuiteResult("counts", True, f"n=1..{COUNT_MAX_N}")


def check_bijection() -> SuiteResult:
    """Breadth-first parent ranks map trees onto parking functions bijectively."""
    for m in range(1, BIJECTION_MAX_M + 1):
        trees = list(iter_cayley_trees(m + 1))
        image = {tree_to_parking(t).places for t in trees}
        expected = {p.places for p in enumerate_parking(m)}
        if len(image) != len(trees) or image != expected:
            return SuiteResult("bijection", False, f"m={m}: image differs")
    return SuiteResult("bijection", True, f"m=1..{BIJECTION_MAX_M}")


def check_example_tree() -> SuiteResult:
    """The ten-vertex worked example encodes and maps as tabulated."""
    code = prufer_encode(EXAMPLE_TREE).code
    places = tree_to_parking(EXAMPLE_TREE).places
    ok = (
        code == (8, 8, 6, 0, 3, 0, 3, 3)
        and bfs_ranks(EXAMPLE_TREE).parent_rank_of(5) == 2
        and places == (2, 2, 1, 1, 2, 1, 8, 4, 8)
        and prufer_decode(code) == EXAMPLE_TREE
    )
    return SuiteResult("example-tree", ok, f"code={code} places={places}")


def check_dp_oracle() -> SuiteResult:
    """Walk-transfer joint laws agree with exhaustive enumeration."""
    worst = 0.0
    for n in range(1, DP_ORACLE_MAX_N + 1):
        for k in range(1, min(n, DP_ORACLE_MAX_K) + 1):
            exact = oracle_joint_pmf(n, k).to_array()
            worst = max(worst, float(np.abs(joint_pmf_table(n, k) - exact).max()))
    return SuiteResult(
        "dp-oracle", worst <= DP_ORACLE_TOLERANCE, f"max_abs_error={worst:.3g}"
    )


def _is_excursion(x: tuple[int, ...]) -> bool:
    heights = np.cumsum(np.asarray(x) - 1)
    return bool((heights[:-1] >= 0).all() and heights[-1] == -1)


def check_cycle_lemma() -> SuiteResult:
    """Every bridge has exactly one excursion rotation, the one cycle_rotation picks."""
    checked = 0
    for n in range(1, CYCLE_LEMMA_MAX_N + 1):
        for x in product(range(n + 1), repeat=n + 1):
            if sum(x) != n:
                continue
            rotations = [x[r:] + x[:r] for r in range(n + 1)]
            valid = [r for r, rotated in enumerate(rotations) if _is_excursion(rotated)]
            if valid != [cycle_rotation(x)]:
                detail = f"x={x}: valid rotations {valid}"
                return SuiteResult("cycle-lemma", False, detail)
            checked += 1
    return SuiteResult("cycle-lemma", True, f"bridges={checked}")


def check_sampler_gof() -> SuiteResult:
    """Sampled parking functions of size 3 are uniform over all 16."""
    drawn = sample_prefixes(GOF_N, GOF_N, samples=GOF_SAMPLES, seed=0)
    outcomes = {p.places: i for i, p in enumerate(enumerate_parking(GOF_N))}
    observed = np.zeros(len(outcomes))
    for row in drawn:
        observed[outcomes[tuple(int(v) for v in row)]] += 1
    expected = np.full(len(outcomes), GOF_SAMPLES / len(outcomes))
    pvalue = chi_square_pvalue(observed, expected)
    passed = pvalue > settings.GOF_SIGNIFICANCE
    return SuiteResult("sampler-gof", passed, f"pvalue={pvalue:.3g}")


SuiteFn = Callable[[], SuiteResult]

SUITES: tuple[SuiteFn, ...] = (
    check_counts,
    check_bijection,
    check_example_tree,
    check_dp_oracle,
    check_cycle_lemma,
    check_sampler_gof,
)


def run_selftest() -> list[SuiteResult]:
    """Run every suite; a suite that raises counts as failed."""
    results = []
    for suite in SUITES:
        try:
            result = suite()
        except Exception as exc:
            logger.exception("Self-test suite crashed", suite=suite.__name__)
            result = SuiteResult(suite.__name__.removeprefix("check_"), False, str(exc))
        logger.info(
            "Self-test suite finished", suite=result.suite, passed=result.passed
        )
        results.append(result)
    return results
