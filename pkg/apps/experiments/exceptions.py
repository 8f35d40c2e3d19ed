"""
Custom exceptions for the experiments module.
"""


class ExperimentError(Exception):
    """Base exception for experiment errors."""
    pass


class DivergenceError(ExperimentError):
    """Raised when training produces a non-finite loss or gradient.

    Attributes:
        epoch: The epoch that diverged, counting from 1.
    """

    def __init__(self, epoch, detail=''):
        message = f"training diverged in epoch {epoch}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.epoch = epoch


class EmptyMaskError(ExperimentError):
    """Raised when an evaluation set has no scored position."""
    pass
