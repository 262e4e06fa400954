"""Exception hierarchy shared by every module."""


class NapdecError(Exception):
    pass


class DivisionByZero(NapdecError, ZeroDivisionError):
    pass


class DimensionMismatch(NapdecError, ValueError):
    pass


class SingularLinearPart(NapdecError, ValueError):
    pass


class PreconditionViolated(NapdecError, ValueError):
    pass


class IndexOutOfRange(NapdecError, IndexError):
    pass


class BoundExceeded(NapdecError, ValueError):
    pass


class WrongConstruction(NapdecError, TypeError):
    pass


class UnsupportedDescriptor(NapdecError, ValueError):
    pass


class ParseError(NapdecError, ValueError):
    pass


class StabilizedBasePoint(NapdecError):
    """The base point of an orbit is fixed by a nonempty word."""

    def __init__(self, word: str):
        super().__init__(f"base point is fixed by word {word!r}")
        self.word = word
