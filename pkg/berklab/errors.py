"""
Exception hierarchy for berklab.

Every domain error carries a stable ``code`` used by the command line
front end when it reports failures as machine-readable JSON.
"""

__all__ = [
    "BerklabError", "ZeroPolynomial", "InvalidProjectivePoint",
    "CoefficientParseError", "NotNormalized", "SingularMatrix",
    "DegenerateLift", "DiskContainsZeroAndPole", "IdenticallyEqual",
    "ToleranceUnreachable", "InsufficientResolution",
    "ExceptionalBasePoint", "TreeMismatch", "CertificationError",
    "ConfigError", "OutputError"
]


class BerklabError(Exception):
    """Base class of all berklab domain errors."""
    code = "berklab_error"


class ZeroPolynomial(BerklabError, ValueError):
    code = "zero_polynomial"


class InvalidProjectivePoint(BerklabError, ValueError):
    code = "invalid_projective_point"


class CoefficientParseError(BerklabError, ValueError):
    code = "coefficient_parse_error"


class NotNormalized(BerklabError, ValueError):
    code = "not_normalized"


class SingularMatrix(BerklabError, ValueError):
    code = "singular_matrix"


class DegenerateLift(BerklabError, ValueError):
    """The two forms of a lift share a common factor (zero resultant)."""
    code = "degenerate_lift"


class DiskContainsZeroAndPole(BerklabError, ValueError):
    """The disk holds a zero and a pole, so its image is not a disk."""
    code = "disk_contains_zero_and_pole"


class IdenticallyEqual(BerklabError, ValueError):
    """f^n and g coincide, the divisor [f^n = g] is undefined."""
    code = "identically_equal"


class ToleranceUnreachable(BerklabError, RuntimeError):
    code = "tolerance_unreachable"


class InsufficientResolution(BerklabError, RuntimeError):
    code = "insufficient_resolution"


class ExceptionalBasePoint(BerklabError, ValueError):
    code = "exceptional_base_point"


class TreeMismatch(BerklabError, ValueError):
    code = "tree_mismatch"


class CertificationError(BerklabError, RuntimeError):
    """A numerically checked bound or cross-check failed."""
    code = "certification_error"


class ConfigError(BerklabError, ValueError):
    code = "config_error"


class OutputError(BerklabError, OSError):
    """A result or log file could not be written."""
    code = "output_error"
