"""
Custom exceptions for the graph oracles module.
"""


class OracleError(Exception):
    """Base exception for oracle errors."""
    pass


class MissingColorError(OracleError, KeyError):
    """Raised when an oracle needs a node color the graph does not carry."""

    def __init__(self, color):
        super().__init__(f"graph has no '{color}' color channel")
        self.color = color

    def __str__(self):
        return self.args[0]


class FamilyRecordError(OracleError, ValueError):
    """Raised when a family record is inconsistent (e.g. two mothers)."""
    pass


class UnsupportedTupleSizeError(OracleError, ValueError):
    """Raised when a WL tuple size is outside the supported range."""
    pass


class UnknownOracleError(OracleError, ValueError):
    """Raised when an oracle kind is not recognized."""
    pass
