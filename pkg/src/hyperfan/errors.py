class HyperfanError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(HyperfanError, ValueError):
    pass


class PreconditionError(HyperfanError, ValueError):
    pass


class CapacityError(HyperfanError):
    pass


class ParseError(HyperfanError, ValueError):
    pass


class UnsupportedError(HyperfanError):
    pass
