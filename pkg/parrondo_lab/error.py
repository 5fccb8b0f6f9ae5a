"""
Exception classes for parrondo_lab.

Three category bases decide how the command line reports a failure:
``InputError`` (exit code 2), ``DomainError`` (exit code 3) and
``InternalInvariantError`` (exit code 4).
"""


class ParrondoLabError(Exception):
    """Base class for parrondo_lab errors"""
    error_code = "ParrondoLabError"
    exit_code = 1

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


class InputError(ParrondoLabError):
    """Raised when user-provided input cannot be used"""
    error_code = "InputError"
    exit_code = 2


class DomainError(ParrondoLabError):
    """Raised when a mathematical precondition is violated"""
    error_code = "DomainError"
    exit_code = 3


class InternalInvariantError(ParrondoLabError):
    """Raised when a result contradicts a proven property"""
    error_code = "InternalInvariantError"
    exit_code = 4


class EmptyCoefficients(InputError):
    """Raised when a jet is built from an empty coefficient list"""
    error_code = "EmptyCoefficients"


class MapFileError(InputError):
    """Raised when a map file is malformed

    The ``position`` attribute points at the offending element, either as
    a JSON path (``maps[1].coeffs[3]``) or as a line/column pair.
    """
    error_code = "MapFileError"

    def __init__(self, message, position=None, details=None):
        if position:
            message = f"{position}: {message}"
        super().__init__(message, details)
        self.position = position


class UnknownGalleryEntry(InputError):
    """Raised when a gallery name is not registered"""
    error_code = "UnknownGalleryEntry"


class ConfigurationError(InputError):
    """Raised when a configuration value is invalid"""
    error_code = "ConfigurationError"


class WrongMultiplier(DomainError):
    """Raised when a jet does not have the multiplier an operation needs"""
    error_code = "WrongMultiplier"


class NonInvertibleJet(DomainError):
    """Raised when inverting a jet whose linear coefficient vanishes"""
    error_code = "NonInvertibleJet"


class InvalidNormalForm(DomainError):
    """Raised when normal-form parameters violate their parity rule"""
    error_code = "InvalidNormalForm"


class InvalidPaddingTarget(DomainError):
    """Raised when a periodic system cannot be padded as requested"""
    error_code = "InvalidPaddingTarget"


class MismatchedOrders(DomainError):
    """Raised when the jets of a periodic system have different orders"""
    error_code = "MismatchedOrders"


class NotEllipticRotationForm(DomainError):
    """Raised when a planar map's linear part is not an elliptic rotation"""
    error_code = "NotEllipticRotationForm"


class NotOnUnitCircle(DomainError):
    """Raised when an eigenvalue is expected to have modulus one"""
    error_code = "NotOnUnitCircle"


class ResonantEigenvalue(DomainError):
    """Raised when the eigenvalue is a root of unity of low order"""
    error_code = "ResonantEigenvalue"


class OddOrderViolation(InternalInvariantError):
    """Raised when the first nonzero stability constant has even order"""
    error_code = "OddOrderViolation"


class RootNotBracketed(InternalInvariantError):
    """Raised when a bracketed root solve has no sign change"""
    error_code = "RootNotBracketed"


class GalleryCheckFailed(InternalInvariantError):
    """Raised when a recomputed gallery value disagrees with its record"""
    error_code = "GalleryCheckFailed"
