"""Exception types shared across the toolkit."""

from __future__ import annotations


class IntentBenchError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(IntentBenchError, ValueError):
    """Input violates a documented invariant (duplicate ids, missing labels, ...)."""


class FormatError(ValidationError):
    """A file does not conform to its documented line format."""

    def __init__(self, message: str, path=None, line: int | None = None):
        parts = []
        if path is not None:
            parts.append(str(path))
        if line is not None:
            parts.append(f"line {line}")
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.line = line


class DegenerateDataError(IntentBenchError, ValueError):
    """The data cannot support the requested operation (e.g. all points identical)."""
