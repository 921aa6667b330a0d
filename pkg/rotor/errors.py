"""
Exceptions raised by the rotor package
All of them are ValueErrors so callers that only care about bad input can catch that
"""


class RotorError(ValueError):
    """Base class for every error raised on bad input or an impossible request"""


class NormalizationError(RotorError):
    """An axis or quaternion is not unit length"""


class DomainError(RotorError):
    """A parameter lies outside the range an operation accepts"""


class OffsetOutOfRange(DomainError):
    """No real three-pulse solution exists for the requested off-resonance fraction"""


class UndefinedPhase(RotorError):
    """A spectral bin has zero magnitude, so its phase is meaningless"""


class DocumentError(DomainError):
    """A sequence or spin-system document is malformed"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
