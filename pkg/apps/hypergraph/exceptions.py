"""
Custom exceptions for the hypergraph module.
"""


class HypergraphError(Exception):
    """Base exception for hypergraph errors."""
    pass


class InvalidGraphError(HypergraphError, ValueError):
    """Raised when an input graph violates its contract.

    Attributes:
        position: Index of the offending edge or node entry, if any.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PermutationError(HypergraphError, ValueError):
    """Raised when a node permutation is not a bijection of the right size."""
    pass


class EnumerationLimitError(HypergraphError):
    """Raised when enumeration would blow up.

    Attributes:
        count: Number of graphs the enumeration would have produced.
    """

    def __init__(self, n, count, limit):
        super().__init__(
            f"refusing to enumerate graphs on {n} nodes: {count} graphs "
            f"(limit is n <= {limit})"
        )
        self.count = count
