"""Exception hierarchy shared by every qke module."""


class QKEError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(QKEError, ValueError):
    """A domain parameter or argument is outside its allowed range."""


class NotInvertibleError(ParameterError):
    def __init__(self, a, modulus, gcd):
        super().__init__(f"{a} is not invertible modulo {modulus} (gcd={gcd})")
        self.a = a
        self.modulus = modulus
        self.gcd = gcd


class ValidationError(QKEError, ValueError):
    """A received value (public key, intermediate, ciphertext) failed a range check."""


class ProtocolOrderError(QKEError):
    """A session operation was called in the wrong state."""


class ScaleError(QKEError):
    """The group is too large for the exhaustive or discrete-log machinery."""


class FormatError(QKEError, ValueError):
    """Malformed frame or key text."""


class IncompleteFrameError(FormatError):
    """More octets are needed before a frame can be decoded."""


class UnsupportedMessageError(FormatError):
    """A frame carried an unknown message type."""


class WidthError(QKEError, ValueError):
    """An integer does not fit the requested fixed width."""
