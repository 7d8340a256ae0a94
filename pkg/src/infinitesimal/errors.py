"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`InfinitesimalError`, which is a :class:`ValueError` so callers that
only care about bad input can catch the builtin.  Division by an exact zero
raises the builtin :class:`ZeroDivisionError`.
"""


class InfinitesimalError(ValueError):
    pass


class ContextMismatchError(InfinitesimalError):
    pass


class UnlimitedError(InfinitesimalError):
    """An operation that needs a limited (finite) element got an infinite one."""


class DomainError(InfinitesimalError):
    pass


class UnliftableError(DomainError):
    """An elementary function was applied to an unlimited argument."""


class InexactError(DomainError):
    """An exact-mode computation needs a value that is not rational."""


class NotDifferentiableError(InfinitesimalError):
    pass


class NoBracketError(InfinitesimalError):
    pass


class DivergenceError(InfinitesimalError):
    pass


class LimitNotComputableError(InfinitesimalError):
    pass


class ParseError(InfinitesimalError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)
