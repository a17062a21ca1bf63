"""Tests for parklaw.exceptions module."""

import pytest

from parklaw.exceptions import (
    InvalidCodeError,
    InvalidInputError,
    InvalidTreeError,
    MethodError,
    ParklawError,
    SizeLimitError,
)


class TestParklawError:
    """Message formatting and hierarchy."""

    def test_message_without_context(self) -> None:
        err = ParklawError("boom")
        assert str(err) == "boom"
        assert err.context == {}

    def test_message_with_context(self) -> None:
        err = SizeLimitError("n exceeds the enumeration guard", n=9, limit=8)
        assert str(err) == "n exceeds the enumeration guard (n=9, limit=8)"
        assert err.context == {"n": 9, "limit": 8}

    @pytest.mark.parametrize(
        "cls", [InvalidInputError, InvalidTreeError, InvalidCodeError]
    )
    def test_input_errors_are_value_errors(self, cls: type[ParklawError]) -> None:
        with pytest.raises(ValueError, match="bad"):
            raise cls("bad")

    def test_method_error_is_a_size_limit_error(self) -> None:
        assert issubclass(MethodError, SizeLimitError)
        assert not issubclass(SizeLimitError, ValueError)
