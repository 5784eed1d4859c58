"""Exception types shared across the package."""


class LocalComputationError(Exception):
    """Base class for every error raised by localcomp."""


class DomainError(LocalComputationError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class UndefinedCombination(LocalComputationError, ArithmeticError):
    """Combination has no defined result.

    Raised when a product of potentials vanishes everywhere, or when two
    mass functions are in total conflict. ``where`` carries optional context
    (a tree edge, a vertex, a factor pair) added by callers higher up.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where

    def __str__(self):
        base = super().__str__()
        if self.where is None:
            return base
        return f"{base} (at {self.where})"
