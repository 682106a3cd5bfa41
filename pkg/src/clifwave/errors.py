"""Exception types raised across the package."""


class ClifwaveError(Exception):
    """Base class for all package errors."""


class DimensionError(ClifwaveError, ValueError):
    """Unsupported algebra dimension or mismatched operands."""


class GridMismatch(ClifwaveError, ValueError):
    """Operands live on different sampling grids."""


class NonInvertible(ClifwaveError, ArithmeticError):
    """An admissibility constant is (numerically) singular."""


class UnsupportedGrades(ClifwaveError, ValueError):
    """A multivector carries grades the operation cannot handle."""


class NotAdmissible(ClifwaveError, ValueError):
    """A mother wavelet fails the admissibility conditions."""


class FormatError(ClifwaveError, ValueError):
    """Malformed CWF1/CWC1 file."""
