"""Exception hierarchy shared by all sigret modules."""


class SigretError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedFormat(SigretError):
    pass


class CorruptImage(SigretError):
    pass


class DimensionNotDivisible(SigretError):
    pass


class UnknownWavelet(SigretError):
    pass


class MalformedPyramid(SigretError):
    pass


class BadDimensions(SigretError):
    pass


class BadConfig(SigretError):
    pass


class MalformedCoeffs(SigretError):
    pass


class EmptySubband(SigretError):
    pass


class DimensionMismatch(SigretError):
    pass


class LayoutMismatch(SigretError):
    pass


class EmptyDatabase(SigretError):
    pass


class VersionMismatch(SigretError):
    pass


class ParseError(SigretError):
    pass


class EmptyRanking(SigretError):
    pass


class InsufficientData(SigretError):
    pass


class CutMismatch(SigretError):
    pass


class BadSpec(SigretError):
    pass
