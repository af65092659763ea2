"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: UsageError -> 1, ValidationError (and
its subclasses) -> 2, InternalCheckError -> 3.
"""

from __future__ import annotations

__all__ = ["CablecalcError", "UsageError", "ValidationError", "InsufficientDataError", "InternalCheckError"]


class CablecalcError(Exception):
    """Base class for package errors."""


class UsageError(CablecalcError):
    """Malformed command line or malformed request."""


class ValidationError(CablecalcError):
    """Input data fails a documented precondition or invariant."""


class InsufficientDataError(ValidationError):
    """A computation needs invariants the input does not carry."""


class InternalCheckError(CablecalcError):
    """An internal consistency assertion failed; indicates a bug."""
