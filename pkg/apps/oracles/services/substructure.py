"""
Substructure and simple statistics oracles.

All oracles read the "edge" predicate of an undirected simple graph.
"""
from collections import Counter
from itertools import combinations
from typing import Union

import numpy as np

from apps.hypergraph.services.representation import HypergraphRepr
from apps.oracles.exceptions import MissingColorError, UnknownOracleError

SUBSTRUCTURES = ('link3', 'link4', 'triangle', 'clique4')
STATISTICS = ('max_degree', 'color_majority', 'count_red')


def _neighbor_sets(g: HypergraphRepr):
    adjacency = g.adjacency() > 0
    return [set(np.flatnonzero(adjacency[v]).tolist()) for v in range(g.n)]


def has_link3(g: HypergraphRepr) -> bool:
    """A path a-b-c on three distinct nodes: some node has two neighbors."""
    return any(len(neighbors) >= 2 for neighbors in _neighbor_sets(g))


def has_link4(g: HypergraphRepr) -> bool:
    """
    Edges (a, b), (b, c), (c, d) with a != c and b != d.

    a == d is allowed, so a triangle is also a 4-link.
    """
    neighbors = _neighbor_sets(g)
    for b, c in g.edge_list():
        if neighbors[b] - {c} and neighbors[c] - {b}:
            return True
    return False


def has_triangle(g: HypergraphRepr) -> bool:
    neighbors = _neighbor_sets(g)
    return any(neighbors[a] & neighbors[b] for a, b in g.edge_list())


def clique4_count(g: HypergraphRepr) -> int:
    """Number of 4-node cliques."""
    neighbors = _neighbor_sets(g)
    count = 0
    for a, b in g.edge_list():
        common = sorted(c for c in neighbors[a] & neighbors[b] if c > b)
        for c, d in combinations(common, 2):
            if d in neighbors[c]:
                count += 1
    return count


def has_clique4(g: HypergraphRepr) -> bool:
    return clique4_count(g) > 0


def edge_exists(g: HypergraphRepr) -> bool:
    return bool(g.edge_list())


def substructure_oracle(kind: str, g: HypergraphRepr) -> bool:
    """
    Whether g contains the substructure `kind`.

    Args:
        kind: One of link3, link4, triangle, clique4.
        g: Undirected simple graph.

    Raises:
        UnknownOracleError: For any other kind.
    """
    checks = {
        'link3': has_link3,
        'link4': has_link4,
        'triangle': has_triangle,
        'clique4': has_clique4,
    }
    if kind not in checks:
        raise UnknownOracleError(f"unknown substructure '{kind}'")
    return checks[kind](g)


def _require_colors(g: HypergraphRepr, name: str = None) -> None:
    if name is not None and not g.has_channel(1, name):
        raise MissingColorError(name)
    if name is None and not g.color_names:
        raise MissingColorError('any')


def simple_stats_oracle(kind: str, g: HypergraphRepr) -> Union[int, str]:
    """
    Exact counting statistics.

    max_degree returns an int, count_red the number of red nodes, and
    color_majority the color held by most nodes (ties go to the
    alphabetically first color).

    Raises:
        MissingColorError: If the colors the statistic needs are absent.
        UnknownOracleError: For an unknown kind.
    """
    if kind == 'max_degree':
        return int(g.degrees().max()) if g.n else 0
    if kind == 'count_red':
        _require_colors(g, 'red')
        return len(g.colored('red'))
    if kind == 'color_majority':
        _require_colors(g)
        counts = Counter({name: len(g.colored(name)) for name in g.color_names})
        best = max(counts.values())
        return min(name for name, count in counts.items() if count == best)
    raise UnknownOracleError(f"unknown statistic '{kind}'")
