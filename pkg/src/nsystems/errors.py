"""Exception hierarchy shared by every module of the package."""


class NSystemError(Exception):
    """Base class for all errors raised by :mod:`nsystems`."""


class OutOfDomain(NSystemError, ValueError):
    pass


class InvalidSystem(NSystemError, ValueError):
    pass


class NotAnNSystem(InvalidSystem):
    pass


class NotProper(NSystemError, ValueError):
    pass


class ZeroSum(NSystemError, ValueError):
    pass


class NotSorted(NSystemError, ValueError):
    pass


class DimensionMismatch(NSystemError, ValueError):
    pass


class EmptyWindow(NSystemError, ValueError):
    pass


class BadParameters(NSystemError, ValueError):
    pass


class PreconditionViolated(NSystemError, ValueError):
    pass


class InfeasibleStep(NSystemError, RuntimeError):
    """The constraint hook rejected every admissible move of the ball game.

    ``partial`` holds the path generated up to the stuck state (None when
    the game never moved).
    """

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class ParseError(NSystemError, ValueError):
    """Malformed input document.

    ``where`` names the offending field path (``breakpoints[2].q``) or a
    ``line:column`` position for syntax errors.
    """

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)
