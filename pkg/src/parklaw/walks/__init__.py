"""Poisson(1) walk conditioned to first hit -1 at time n+1.

Key Components:
    - ExcursionTransfer / dp_build: forward and backward tables of the walk
    - joint_pmf / joint_pmf_table: exact law of the first k places
    - cdf_symmetric / product_height_expectation: height-based identities
    - sample_excursion / sample_parking_prefix: exact cycle-lemma samplers
"""

from parklaw.walks.constants import EXACT_DP_MAX_N, PMF_TABLE_MAX_CELLS
from parklaw.walks.excursions import (
    cycle_rotation,
    sample_conditioned_increments,
    sample_excursion,
    sample_excursion_heights,
    sample_parking_prefix,
    sample_walk_prefixes,
)
from parklaw.walks.laws import (
    cdf_symmetric,
    increment_law,
    increment_means,
    joint_pmf,
    joint_pmf_table,
    pair_increment_law,
    product_height_expectation,
)
from parklaw.walks.schemas import ExcursionPath, WeightQuery
from parklaw.walks.transfer import (
    DpTable,
    ExcursionTransfer,
    conditioned_expectation,
    dp_build,
    falling_factorial,
    poisson_step_pmf,
    transfer_for,
)

__all__ = [
    "EXACT_DP_MAX_N",
    "PMF_TABLE_MAX_CELLS",
    "DpTable",
    "ExcursionPath",
    "ExcursionTransfer",
    "WeightQuery",
    "cdf_symmetric",
    "conditioned_expectation",
    "cycle_rotation",
    "dp_build",
    "falling_factorial",
    "increment_law",
    "increment_means",
    "joint_pmf",
    "joint_pmf_table",
    "pair_increment_law",
    "poisson_step_pmf",
    "product_height_expectation",
    "sample_conditioned_increments",
    "sample_excursion",
    "sample_excursion_heights",
    "sample_parking_prefix",
    "sample_walk_prefixes",
    "transfer_for",
]
