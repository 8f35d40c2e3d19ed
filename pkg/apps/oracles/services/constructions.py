"""
Counterexample graph pairs.
"""
from dataclasses import dataclass

from apps.hypergraph.services.representation import HypergraphRepr, from_edge_list
from apps.oracles.exceptions import OracleError

ST_COLORS = ('S', 'T')


@dataclass(frozen=True, eq=False)
class CounterexamplePair:
    """Two same-size graphs plus where they came from."""
    first: HypergraphRepr
    second: HypergraphRepr
    provenance: str

    def __post_init__(self):
        if self.first.n != self.second.n:
            raise OracleError(
                f"pair graphs differ in size: {self.first.n} vs {self.second.n}"
            )


def chain_edges(k_len: int):
    """Two disjoint paths u_1..u_k (nodes 0..k-1) and v_1..v_k (k..2k-1)."""
    edges = [(i, i + 1) for i in range(k_len - 1)]
    return edges + [(k_len + i, k_len + i + 1) for i in range(k_len - 1)]


def chain_counterexample(k_len: int) -> CounterexamplePair:
    """
    Same underlying graph, S at u_1 in both; T at u_k (connected to S) in
    the first graph and at v_k (not connected) in the second.

    Raises:
        OracleError: If k_len < 2.
    """
    if k_len < 2:
        raise OracleError(f"chains need k_len >= 2, got {k_len}")
    n, edges = 2 * k_len, chain_edges(k_len)
    same_chain = from_edge_list(n, edges, colors={'S': [0], 'T': [k_len - 1]})
    cross_chain = from_edge_list(n, edges, colors={'S': [0], 'T': [2 * k_len - 1]})
    return CounterexamplePair(
        first=same_chain,
        second=cross_chain,
        provenance=f"chain(k_len={k_len}): T on S's chain vs T on the other chain",
    )


def regular_pair() -> CounterexamplePair:
    """Two disjoint triangles against the 6-cycle; both 2-regular."""
    two_triangles = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    hexagon = from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
    return CounterexamplePair(
        first=two_triangles,
        second=hexagon,
        provenance="regular_pair: 2 x C3 vs C6",
    )
