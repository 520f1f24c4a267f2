"""
Error kinds raised by the solver library.

Every validation failure is also a ValueError so callers that only know the
standard hierarchy still catch it. The CLI maps these to exit code 1.
"""


class QrError(Exception):
    """Base class for all library errors."""


class NotPositiveDefinite(QrError, ValueError):
    def __init__(self, which: str = "matrix", pivot: float | None = None):
        self.which = which
        self.pivot = pivot
        detail = f" (pivot {pivot:.3e})" if pivot is not None else ""
        super().__init__(f"{which} is not positive definite{detail}")


class DimensionMismatch(QrError, ValueError):
    pass


class DimensionTooSmall(QrError, ValueError):
    pass


class BadBounds(QrError, ValueError):
    pass


class NonPositiveT(QrError, ValueError):
    pass


class NonNegativeFbar(QrError, ValueError):
    pass


class OracleDimensionLimit(QrError, ValueError):
    pass


class InvalidConfig(QrError, ValueError):
    pass


class InstanceFormatError(QrError, ValueError):
    pass
