"""Exception types shared by every engine module."""


class EngineError(Exception):
    """Base class for all errors raised by the engine."""


class DomainError(EngineError, ValueError):
    """An argument lies outside the stated domain of an operation."""


class UnsupportedOperationError(EngineError, TypeError):
    """The operation is not defined for the given objects.

    Raised, for example, when an opaque upper motive is fed to an operation
    that needs its full split polynomial, which the engine deliberately does
    not guess.
    """
