"""Exception hierarchy shared across the package."""


class SchreierError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(SchreierError):
    pass


class AlphabetMismatch(SchreierError):
    pass


class Malformed(SchreierError):
    """A word over the padded alphabet is not a valid convolution."""


class InvalidEncoding(SchreierError):
    pass


class NotCofinal(SchreierError):
    """The image of a vertex leaves the cofinality class of the basepoint."""


class UnsupportedOmega(SchreierError):
    pass


class RangeExceeded(SchreierError):
    pass


class WindowTooSmall(SchreierError):
    pass


class NoCorrespondence(SchreierError):
    pass


class Ambiguous(SchreierError):
    pass


class InsufficientRadius(SchreierError):
    pass
