"""
Custom exceptions for the relational network models module.
"""


class ModelError(Exception):
    """Base exception for model errors."""
    pass


class ArityError(ModelError, ValueError):
    """Raised when a tensor arity falls outside what the model supports."""
    pass


class ConfigMismatchError(ModelError, ValueError):
    """Raised when a config is invalid or disagrees with params or inputs."""
    pass


class AggregationError(ModelError, ValueError):
    """Raised when an aggregation is undefined, e.g. max over no nodes."""
    pass


class QuantizationError(ModelError, ValueError):
    """Raised when quantized activations fall outside [0, 1]."""
    pass


class ModelFileError(ModelError):
    """Raised when a model file cannot be read back."""
    pass
