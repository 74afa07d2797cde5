"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FlagcxError(Exception):
    """Base class for all package errors."""


class InvariantViolation(FlagcxError):
    """A structural invariant failed (bad block parameters, non-orthogonal matrix, ...)."""


class UnsupportedFlag(FlagcxError):
    """The requested operation is not defined for this flag or block layout."""


class TheoremContradiction(FlagcxError):
    """A computation contradicted a certified theorem (e.g. an integrable verdict on a GM2 flag)."""
