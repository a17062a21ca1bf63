"""Parking-function definitions, enumeration and the exhaustive oracle.

Key Components:
    - ParkingFunction / is_parking: the object and its rearrangement test
    - enumerate_parking / count_parking: exhaustive generation (n ≤ 8)
    - oracle_joint_pmf: exact law of the first k places by enumeration (n ≤ 7)
    - statistic_sum / statistic_max: statistics of the first k places
"""

from parklaw.parking.constants import ENUMERATION_MAX_N, ORACLE_MAX_N
from parklaw.parking.enumeration import (
    ExactPmf,
    count_parking,
    enumerate_parking,
    iter_nondecreasing_parking,
    oracle_joint_pmf,
)
from parklaw.parking.functions import (
    ParkingFunction,
    is_parking,
    statistic_max,
    statistic_sum,
)

__all__ = [
    "ENUMERATION_MAX_N",
    "ORACLE_MAX_N",
    "ExactPmf",
    "ParkingFunction",
    "count_parking",
    "enumerate_parking",
    "is_parking",
    "iter_nondecreasing_parking",
    "oracle_joint_pmf",
    "statistic_max",
    "statistic_sum",
]
