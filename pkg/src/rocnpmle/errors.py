"""Exception types raised by :mod:`rocnpmle`."""

from __future__ import annotations


class RocNpmleError(Exception):
    """Base class for all package errors."""


class ParseError(RocNpmleError, ValueError):
    """Malformed input file.  ``row`` is the 1-based line number, if known."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class MissingClass(RocNpmleError, ValueError):
    """One of the two classes has no observations."""


class DegenerateSample(RocNpmleError, ValueError):
    """Too few observations in a class for a variance estimate."""


class OracleLimit(RocNpmleError, ValueError):
    """Too many categories for exhaustive partition enumeration."""


class ParamError(RocNpmleError, ValueError):
    """Simulation parameter outside its admissible range."""
