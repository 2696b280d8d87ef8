"""Exception hierarchy shared by all modules."""


class E2Error(ValueError):
    """Base class for every error raised by this package."""


class InvalidParameter(E2Error):
    pass


class RingMismatch(E2Error):
    pass


class NotUnimodular(E2Error):
    pass


class InvalidMove(E2Error):
    pass


class InvalidInput(E2Error):
    pass


class OutOfScopeRing(E2Error):
    """The requested operation relies on a hypothesis the ring does not meet."""


class ParseError(E2Error):
    pass
