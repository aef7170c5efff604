"""Exception types shared across the package."""


class QuasitwistError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedField(QuasitwistError):
    """Requested field size is not one of the supported prime powers."""


class FieldMismatch(QuasitwistError):
    """Operands belong to different fields."""


class DivisionByZero(QuasitwistError):
    """Division or inversion of a zero field element / polynomial."""


class InvalidShiftConstant(QuasitwistError):
    """Shift constant of a constacyclic object must be nonzero."""


class NotADivisor(QuasitwistError):
    """Generator polynomial does not divide x^m - a."""


class NotMonic(QuasitwistError):
    """Generator polynomial must be monic."""


class EmptyBlock(QuasitwistError):
    """Twistulant block must emit at least one row."""


class MixedInput(QuasitwistError):
    """Codes passed to a partition must share (field, m, a)."""


class OracleScaleExceeded(QuasitwistError):
    """Brute-force oracle asked to run beyond its configured scale."""


class PreconditionFailed(QuasitwistError):
    """A gcd/divisibility precondition of a construction theorem is violated."""


class DimensionDefect(QuasitwistError):
    """Assembled QT matrix ranks below k1 + k2; carries the actual rank."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class ZeroCode(QuasitwistError):
    """Distance computation on a code with no nonzero codewords."""


class NotACodeword(QuasitwistError):
    """Word is not in the row space of the generator matrix."""


class InvalidIndex(QuasitwistError):
    """Quasi-twisted index must divide the code length."""


class ParseError(QuasitwistError):
    """Malformed coefficient string or table row."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (position {position})")
        self.position = position


class FormatError(QuasitwistError):
    """Structurally invalid table row (e.g. block count does not divide n)."""


class TargetTableError(QuasitwistError):
    """Target CSV is missing, malformed, or has a bad header."""
