"""Exception types shared across the package."""

from __future__ import annotations


class QuadsError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(QuadsError):
    """An input exceeds a configured size ceiling (deck too large, etc.)."""


class InternalFaultError(QuadsError):
    """An exact-division self-check failed; indicates a bug, not bad input."""


class SearchBudgetError(QuadsError):
    """A search exceeded its node budget.

    Carries whatever partial progress was made so callers can report or
    resume it.
    """

    def __init__(self, message: str, *, nodes: int, partial=None, checkpoint=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial
        self.checkpoint = checkpoint
