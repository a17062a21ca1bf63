"""Distances, limit-law harnesses and goodness-of-fit tools.

Key Components:
    - tv_distance / kolmogorov_distance: distance to k iid uniforms
    - sum_clt_test / max_exponential_test: KS checks of the limit laws
    - tail_comparison: parking-side vs walk-side tail of the largest place
    - run_replicates / sample_prefixes: reproducible seeded fan-out
"""

from parklaw.stats.distances import kolmogorov_distance, tv_distance
from parklaw.stats.goodness import (
    chi_square,
    chi_square_pvalue,
    ks_statistic,
    pool_sparse_cells,
)
from parklaw.stats.limits import (
    max_exponential_bias,
    max_exponential_test,
    sum_clt_test,
    sum_statistic_mean,
    tail_comparison,
)
from parklaw.stats.replicates import (
    replicate_rng,
    replicate_sizes,
    run_replicates,
    sample_heights,
    sample_prefix_statistics,
    sample_prefixes,
)
from parklaw.stats.schemas import (
    DistanceReport,
    LimitStatistic,
    LimitTestReport,
    Method,
    TailReport,
)

__all__ = [
    "DistanceReport",
    "LimitStatistic",
    "LimitTestReport",
    "Method",
    "TailReport",
    "chi_square",
    "chi_square_pvalue",
    "kolmogorov_distance",
    "ks_statistic",
    "max_exponential_bias",
    "max_exponential_test",
    "pool_sparse_cells",
    "replicate_rng",
    "replicate_sizes",
    "run_replicates",
    "sample_heights",
    "sample_prefix_statistics",
    "sample_prefixes",
    "sum_clt_test",
    "sum_statistic_mean",
    "tail_comparison",
    "tv_distance",
]
