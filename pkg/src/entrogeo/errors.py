"""Semantic exception hierarchy shared by every layer of the package.

Every error carries a stable machine-readable ``code`` plus a category that
front ends map onto transport conventions (CLI exit codes, HTTP statuses):

* ``validation``   - malformed or inconsistent input data      (exit 2 / HTTP 400)
* ``precondition`` - a well-formed request the operation cannot
                     honour, e.g. a subset that is too small    (exit 3 / HTTP 409)
* ``numeric``      - an internal numerical fault that indicates
                     a bug rather than bad input                (exit 4 / HTTP 500)
"""

from __future__ import annotations

CATEGORY_VALIDATION = "validation"
CATEGORY_PRECONDITION = "precondition"
CATEGORY_NUMERIC = "numeric"

EXIT_CODES = {
    CATEGORY_VALIDATION: 2,
    CATEGORY_PRECONDITION: 3,
    CATEGORY_NUMERIC: 4,
}


class EntrogeoError(Exception):
    """Base class; ``code`` is a stable identifier like ``NOT_NORMALIZED``."""

    category = "internal"

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def to_payload(self) -> dict:
        """Machine-readable error object used on stderr and in HTTP bodies."""
        return {
            "error": {
                "code": self.code,
                "category": self.category,
                "message": self.message,
            }
        }


class ValidationError(EntrogeoError):
    """Input data violates its schema or invariants."""

    category = CATEGORY_VALIDATION


class PreconditionError(EntrogeoError):
    """A structurally valid request that the operation's contract rejects."""

    category = CATEGORY_PRECONDITION


class NumericFaultError(EntrogeoError):
    """Numerical result outside what exact arithmetic permits; a bug signal."""

    category = CATEGORY_NUMERIC
