"""Exception types raised across the package."""


class BracketError(Exception):
    """Base class for every error raised by celtic_bracket."""


class NonzeroConstantTerm(BracketError):
    pass


class InexactDivision(BracketError):
    pass


class DimensionMismatch(BracketError):
    pass


class InvalidDiagram(BracketError):
    pass


class LengthMismatch(BracketError):
    pass


class TooManyCrossings(BracketError):
    pass


class EmptyDiagram(BracketError):
    pass


class NoSuchCrossing(BracketError):
    pass


class TooLarge(BracketError):
    pass


class NoIsomorphism(BracketError):
    pass


class ParseError(BracketError):
    """Malformed PD or polynomial text. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
