"""
Custom exceptions for the command-line module.
"""


class CliError(Exception):
    """Base exception for command-line errors."""
    pass


class ConfigFileError(CliError):
    """Raised when a --config file is missing, unreadable or has unknown keys."""
    pass


class OptionError(CliError, ValueError):
    """Raised when an option value cannot be parsed or a required one is missing."""
    pass


class InputFileError(CliError):
    """Raised when an input graph or model file cannot be read."""
    pass
