"""
Custom exceptions for the tensor core module.
"""


class TensorCoreError(Exception):
    """Base exception for tensor core errors."""
    pass


class ShapeMismatchError(TensorCoreError, ValueError):
    """Raised when two tensors violate a shape contract."""

    def __init__(self, message, expected=None, actual=None):
        super().__init__(f"{message}: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class NonFiniteError(TensorCoreError, FloatingPointError):
    """Raised when a tensor holds NaN or Inf entries."""

    def __init__(self, name):
        super().__init__(f"non-finite values in '{name}'")
        self.name = name


class UnknownActivationError(TensorCoreError, ValueError):
    """Raised when an activation name is not supported."""
    pass
