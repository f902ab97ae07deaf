"""Exception hierarchy shared by all hhgabber modules."""


class HHGabberError(ValueError):
    """Base class for every error raised by the package."""


class RingMismatchError(HHGabberError):
    pass


class ZeroPolynomialError(HHGabberError):
    pass


class ParseError(HHGabberError):
    """Syntax or semantic error in polynomial, operator or stanza text."""

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnsupportedError(HHGabberError):
    """The requested computation lies outside what the library can decide."""


class RegularityError(HHGabberError):
    """A candidate regular sequence failed the Jacobian-minor check."""


class RadicalMismatchError(HHGabberError):
    pass


class InfiniteDimensionError(HHGabberError):
    pass
