"""Typed error hierarchy shared by every module."""


class PinchlabError(Exception):
    """Base class for all library errors."""


class NotHyperbolic(PinchlabError):
    """A trace or matrix that does not correspond to a hyperbolic element."""


class DomainError(PinchlabError):
    """An argument outside an operation's stated domain."""


class ValidityError(PinchlabError):
    """A short-spectrum request outside the radius where the ladder is complete."""


class NumericsError(PinchlabError):
    """A quadrature or summation that could not meet its certified tolerance."""


class InternalInvariantViolation(PinchlabError):
    """An exact-arithmetic identity failed; indicates a bug, never user input."""
