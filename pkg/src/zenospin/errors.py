"""Exception types raised by the library.

Precondition violations subclass ValueError so callers that do not care
about the fine-grained type can catch the builtin. NumericalError signals a
failure of the numerics themselves (eigensolver breakdown, NaN in output),
not a bad argument.
"""


class ZenoSpinError(Exception):
    """Base class for all library errors."""


class InvalidSpinError(ZenoSpinError, ValueError):
    """Spin quantum number is not a non-negative half-integer."""


class EmbeddingError(ZenoSpinError, ValueError):
    """Operator dimension does not match the target tensor factor."""


class InvalidFieldError(ZenoSpinError, ValueError):
    """Magnetic field value outside the valid range."""


class NonHermitianError(ZenoSpinError, ValueError):
    """A matrix required to be Hermitian is not."""


class ShapeError(ZenoSpinError, ValueError):
    """Array shape incompatible with the requested operation."""


class InvalidThresholdError(ZenoSpinError, ValueError):
    """Mode-classification threshold must be positive."""


class InvalidScanError(ZenoSpinError, ValueError):
    """Scan grid is empty, non-positive or not strictly increasing."""


class NumericalError(ZenoSpinError, RuntimeError):
    """Numerical computation failed (non-convergence, NaN/Inf in results)."""


class ScenarioError(ZenoSpinError, ValueError):
    """Scenario document failed to parse or validate.

    Carries the offending line/column when known (1-based; 0 = unknown).
    """

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, col {column}: {message}"
        super().__init__(message)
