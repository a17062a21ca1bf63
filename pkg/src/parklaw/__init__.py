"""parklaw: first places of uniform parking functions.

Samples uniform parking functions through Cayley trees, computes exact laws of
their first coordinates with a conditioned-random-walk transfer, and checks
distance bounds and limit theorems numerically.
"""

__version__ = "0.1.0"
