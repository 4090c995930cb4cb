"""Exception hierarchy.

The CLI maps these onto exit codes: ``InputError`` -> 2,
``PropertyViolation`` -> 1, ``TheoremViolation`` -> 3.
"""


class CapkitError(Exception):
    """Base class for all library errors."""


class InputError(CapkitError, ValueError):
    """Malformed or mismatched input (bad table, wrong ground set, ...)."""


class ValidationError(InputError):
    """A value table violates the capacity axioms.

    ``axiom`` is one of ``"C1"``, ``"C2"`` or ``"range"``; ``witness`` holds
    the offending subset(s) as bitmasks.
    """

    def __init__(self, message, axiom, witness=()):
        super().__init__(message)
        self.axiom = axiom
        self.witness = tuple(witness)


class PreconditionError(InputError):
    """An operation was called on a capacity outside its domain."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(InputError):
    """An exhaustive check would enumerate more tuples than allowed."""

    def __init__(self, message, count, budget):
        super().__init__(message)
        self.count = count
        self.budget = budget


class IncomparableError(PreconditionError):
    """Two capacities expected to be ordered are not comparable."""


class PropertyViolation(CapkitError):
    """A mathematical property failed on concrete data (a counterexample)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoValidPivot(PropertyViolation):
    """Every sandwich pivot candidate broke the lower bound.

    Carries the current upper capacity, the lower capacity and the list of
    rejected candidate sets.
    """

    def __init__(self, message, mu, nu, candidates, trace=None):
        super().__init__(message)
        self.mu = mu
        self.nu = nu
        self.candidates = list(candidates)
        self.trace = trace


class TheoremViolation(CapkitError, AssertionError):
    """A verified postcondition of a constructive theorem failed."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class GeneratorError(TheoremViolation):
    """A generator emitted something its class checker rejects."""
