"""parklaw unit tests."""
