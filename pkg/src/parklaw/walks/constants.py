"""Size guards for the conditioned-walk transfer."""

from __future__ import annotations

# Forward and backward tables hold (n+2)^2 doubles each
EXACT_DP_MAX_N: int = 1000

# Largest dense joint-pmf table built tuple by tuple (k ≥ 3)
PMF_TABLE_MAX_CELLS: int = 20_000
