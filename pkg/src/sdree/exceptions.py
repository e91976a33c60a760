"""Exception types raised by sdree."""


class SDREEError(ValueError):
    """Base class for all sdree validation errors."""


class EmptyKeyError(SDREEError):
    pass


class KeyTooLongError(SDREEError):
    pass


class DegenerateKeyError(SDREEError):
    """The key digests to a pseudo code of zero, so no shift can be derived."""


class IndexOutOfRangeError(SDREEError):
    pass


class InsufficientDataError(SDREEError):
    """A statistic was requested on too few bytes to be defined."""
