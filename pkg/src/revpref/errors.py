"""Exception types shared across the package."""

from __future__ import annotations


class RevprefError(Exception):
    """Base class for package-specific errors."""


class DatasetError(RevprefError):
    """A dataset file or its values failed validation.

    Carries the 1-based data-row number when the problem is attributable
    to a specific CSV row.
    """

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class CapExceeded(RevprefError):
    """An enumeration would exceed its configured cap.

    Raised instead of silently truncating: callers either raise the cap
    (see ``REVPREF_MAX_ENUM``) or accept that the quantity is not
    computable at this problem size.
    """

    def __init__(self, kind: str, limit: int, required: int):
        self.kind = kind
        self.limit = limit
        self.required = required
        super().__init__(f"{kind}: would need {required}, cap is {limit}")


class StrongCycleError(RevprefError):
    """The operation requires data whose violations are all weak cycles."""


class InternalCheckError(RevprefError):
    """A constructed object failed its own post-hoc validation."""
