"""
Connectivity oracles.

Distances follow the "edge" predicate; for directed graphs edges are
followed in their stored direction.
"""
from collections import deque
from typing import List, Optional

import numpy as np

from apps.hypergraph.services.representation import HypergraphRepr
from apps.oracles.exceptions import MissingColorError


def _hop_distances(adjacency: List[List[int]], source: int, limit: Optional[int]) -> dict:
    distances = {source: 0}
    frontier = deque([source])
    while frontier:
        node = frontier.popleft()
        if limit is not None and distances[node] >= limit:
            continue
        for neighbor in adjacency[node]:
            if neighbor not in distances:
                distances[neighbor] = distances[node] + 1
                frontier.append(neighbor)
    return distances


def connectivity_oracle(g: HypergraphRepr, k: Optional[int] = None) -> np.ndarray:
    """
    Pairwise reachability by breadth-first search from every node.

    Args:
        g: Graph.
        k: Optional hop bound; None means any finite distance.

    Returns:
        np.ndarray: Boolean [n, n]; (u, v) is True iff dist(u, v) <= k.
        The diagonal is True.
    """
    matrix = g.adjacency() > 0
    adjacency = [np.flatnonzero(matrix[v]).tolist() for v in range(g.n)]
    result = np.zeros((g.n, g.n), dtype=bool)
    for source in range(g.n):
        for target in _hop_distances(adjacency, source, k):
            result[source, target] = True
    return result


def st_connectivity_oracle(g: HypergraphRepr, k: Optional[int] = None) -> bool:
    """
    Whether some S-colored node reaches some T-colored node within k hops.

    Raises:
        MissingColorError: If g has no S or no T channel.
    """
    for name in ('S', 'T'):
        if not g.has_channel(1, name):
            raise MissingColorError(name)
    reach = connectivity_oracle(g, k)
    sources, targets = g.colored('S'), g.colored('T')
    return bool(reach[np.ix_(sources, targets)].any()) if sources and targets else False
