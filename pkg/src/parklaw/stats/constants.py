"""Constants that fix the values emitted by the statistical harnesses.

Changing any of these changes Monte-Carlo output for a given seed, so they
are module constants rather than settings.
"""

from __future__ import annotations

from enum import IntEnum

# Samples per replicate batch; batch boundaries never depend on --threads
REPLICATE_SIZE: int = 250

# Tree sampler up to this n, excursion sampler above
TREE_SAMPLER_MAX_N: int = 2000

DISTANCE_EXACT_DP_MAX_N: int = 200
DISTANCE_EXACT_DP_MAX_K: int = 2
DISTANCE_ENUMERATION_MAX_N: int = 6

MIN_LIMIT_SAMPLES: int = 100
MIN_EXPECTED_COUNT: float = 5.0

TAIL_MAX_A: int = 20
TAIL_START_HORIZON: int = 64
TAIL_MAX_HORIZON: int = 4096
TAIL_EXACT_MAX_N: int = 500


class Stream(IntEnum):
    """First spawn-key entry of every replicate stream."""

    PREFIX = 1
    EXCURSION = 2
    GRID = 3
