"""Size guards for exhaustive parking-function computations."""

from __future__ import annotations

# Largest n accepted by enumerate_parking: 9^7 = 4782969 functions at n = 8
ENUMERATION_MAX_N: int = 8

# Largest n accepted by the enumeration oracle: 8^6 = 262144 functions at n = 7
ORACLE_MAX_N: int = 7
