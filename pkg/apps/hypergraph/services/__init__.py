"""
Hypergraph services.

This module exports graph construction, permutation and enumeration.
"""
from .enumeration import (
    enumerate_labeled_graphs,
    graph_from_bitmask,
    labeled_graph_count,
    node_pairs,
)
from .permutation import (
    NodePermutation,
    apply_node_permutation,
    compose,
    invert,
    permute_tensor,
    random_permutation,
)
from .representation import (
    CONSTANT,
    EDGE,
    EQUALITY,
    HypergraphRepr,
    TaskTarget,
    adjacency,
    degree_sequence,
    edge_list,
    from_edge_list,
    from_relations,
    with_colors,
)

__all__ = [
    'enumerate_labeled_graphs',
    'graph_from_bitmask',
    'labeled_graph_count',
    'node_pairs',
    'NodePermutation',
    'apply_node_permutation',
    'compose',
    'invert',
    'permute_tensor',
    'random_permutation',
    'CONSTANT',
    'EDGE',
    'EQUALITY',
    'HypergraphRepr',
    'TaskTarget',
    'adjacency',
    'degree_sequence',
    'edge_list',
    'from_edge_list',
    'from_relations',
    'with_colors',
]
