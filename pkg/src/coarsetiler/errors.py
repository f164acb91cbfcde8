"""Exception types shared by the package.

Everything raised on purpose derives from TilerError, so callers (and the
CLI) can separate deliberate rejections from genuine bugs.
"""

from __future__ import annotations


class TilerError(Exception):
    """Base class for all errors raised by coarsetiler."""


class ValidationError(TilerError):
    """Malformed input: bad document fields, dangling references, modulus
    mismatches, preconditions not met."""


class ResourceCapError(TilerError):
    """A configured cap (vertices, group elements, tree depth, leaves) was
    exceeded.  ``lower_bound`` carries the partial count reached."""

    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound


class UnsolvableOnClosedGraph(TilerError):
    """The chain equation has no solution on a closed graph because the
    total charge is nonzero mod p."""


class RecursionSafetyError(TilerError):
    """The word-problem recursion exceeded its safety budget or a section
    failed to contract; indicates a bug or an unsuitable automaton."""


class NonPrimeModulusError(ValidationError):
    """The Gaussian oracle only works over prime moduli."""
