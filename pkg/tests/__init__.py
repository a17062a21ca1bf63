"""parklaw test suite."""
