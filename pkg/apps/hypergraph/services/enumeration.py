"""
Exhaustive enumeration of small labeled simple graphs.
"""
import logging
from itertools import combinations
from typing import Iterator, List

from apps.hypergraph.exceptions import EnumerationLimitError
from apps.hypergraph.services.representation import Edge, HypergraphRepr, from_edge_list

logger = logging.getLogger(__name__)

MAX_ENUMERATION_NODES = 6


def node_pairs(n: int) -> List[Edge]:
    """All (u, v) with u < v, in lexicographic order."""
    return list(combinations(range(n), 2))


def labeled_graph_count(n: int) -> int:
    return 2 ** (n * (n - 1) // 2)


def graph_from_bitmask(n: int, mask: int) -> HypergraphRepr:
    """Bit i of `mask` switches on the i-th pair of node_pairs(n)."""
    pairs = node_pairs(n)
    return from_edge_list(n, [pair for i, pair in enumerate(pairs) if mask >> i & 1])


def enumerate_labeled_graphs(n: int) -> Iterator[HypergraphRepr]:
    """
    Yield every simple undirected labeled graph on n nodes.

    Graphs come ordered by edge bitmask, so the stream is deterministic.

    Raises:
        EnumerationLimitError: If n > 6; carries the count it would produce.
    """
    count = labeled_graph_count(n)
    if n > MAX_ENUMERATION_NODES:
        raise EnumerationLimitError(n, count, MAX_ENUMERATION_NODES)
    logger.debug(f"Enumerating {count} labeled graphs on {n} nodes")
    return (graph_from_bitmask(n, mask) for mask in range(count))
