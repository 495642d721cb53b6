"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """Invalid input. ``code`` names the failed check (e.g. ``"ZERO_MASS"``)."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class ConsistencyError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""
