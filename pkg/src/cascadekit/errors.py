"""Exception types shared across the package."""

from __future__ import annotations


class CascadekitError(Exception):
    """Base class for all package errors."""


class DomainError(CascadekitError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class PreconditionError(CascadekitError, ValueError):
    """A stated precondition of an operation does not hold for the input."""


class CapacityError(CascadekitError, RuntimeError):
    """The finite truncation is exhausted; not a counterexample, just too small."""


class CertificateError(CascadekitError, RuntimeError):
    """A certified structural property failed; carries a concrete witness."""


class ParseError(CascadekitError, ValueError):
    """A text input could not be parsed; message names the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
