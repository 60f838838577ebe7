"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`GrassPathsError`; the CLI reports ``type(err).__name__`` so the class
names double as the user-facing error vocabulary.
"""


class GrassPathsError(Exception):
    pass


class ParseError(GrassPathsError, ValueError):
    pass


class IndexOutOfRange(GrassPathsError, IndexError):
    pass


class DimensionMismatch(GrassPathsError, ValueError):
    pass


class SingularMatrix(GrassPathsError, ZeroDivisionError):
    pass


class NotSkewSymmetric(GrassPathsError, ValueError):
    pass


class OddDimension(GrassPathsError, ValueError):
    pass


class GeneratorCountMismatch(GrassPathsError, ValueError):
    pass


class NonzeroScalarTerm(GrassPathsError, ValueError):
    pass


class ZeroNormalization(GrassPathsError, ZeroDivisionError):
    pass


class SingularSystem(GrassPathsError, ZeroDivisionError):
    """``1 - A`` has no inverse over the rationals."""


class SingularCorrection(GrassPathsError, ZeroDivisionError):
    """``1 + B^J M^t B^I M`` has no inverse over the rationals."""


class CardinalityMismatch(GrassPathsError, ValueError):
    pass


class OddCardinality(GrassPathsError, ValueError):
    pass


class OverlappingSets(GrassPathsError, ValueError):
    pass


class SizeLimit(GrassPathsError, RuntimeError):
    pass


class ZeroDenominator(GrassPathsError, ZeroDivisionError):
    """The signed cycle sum in a ratio identity vanishes."""


class PreconditionViolation(GrassPathsError, ValueError):
    pass


class PathExistsItoJ(PreconditionViolation):
    pass
