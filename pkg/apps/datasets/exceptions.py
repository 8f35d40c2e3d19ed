"""
Custom exceptions for the datasets module.
"""


class DatasetError(Exception):
    """Base exception for dataset generation and storage errors."""
    pass


class GenerationError(DatasetError):
    """Raised when one generation attempt fails; the caller retries with the next derived seed."""
    pass


class DatasetFileError(DatasetError):
    """Raised when a dataset directory, manifest or JSONL line cannot be read."""
    pass
