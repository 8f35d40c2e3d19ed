"""
k-tuple Weisfeiler-Leman refinement.

Tuples start from their atomic type: the node colors at each position and
every binary relation (including equality) between each ordered pair of
positions. A round recolors tuple v by

    (color(v), multiset over u of (color(v/1<-u), ..., color(v/k<-u)))

which is the neighborhood HO-GNNs aggregate over. For k = 1 this is color
refinement over "edge" neighbors.

Several graphs can be refined jointly: signatures are numbered on one
shared palette, so color ids mean the same thing in every graph.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from apps.hypergraph.services.representation import HypergraphRepr
from apps.oracles.exceptions import UnsupportedTupleSizeError

logger = logging.getLogger(__name__)

SUPPORTED_TUPLE_SIZES = (1, 2, 3)

NodeTuple = Tuple[int, ...]


@dataclass
class WLColoring:
    """
    Result of refining one graph.

    Attributes:
        k: Tuple size.
        colors: Tuple -> color id.
        rounds: Refinement rounds performed.
        stable: Whether the partition stopped changing.
        history: Color multiset after each round, round 0 first.
    """
    k: int
    colors: Dict[NodeTuple, int]
    rounds: int
    stable: bool
    history: List[Counter] = field(default_factory=list)

    @property
    def histogram(self) -> Counter:
        return self.history[-1]


@dataclass
class WLCertificate:
    """Where and how two graphs' color multisets first differ."""
    k: int
    distinguishable: bool
    first_round: int = None
    diff: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    rounds: int = 0


def _check_k(k: int) -> None:
    if k not in SUPPORTED_TUPLE_SIZES:
        raise UnsupportedTupleSizeError(
            f"tuple size must be one of {SUPPORTED_TUPLE_SIZES}, got {k}"
        )


def _row(values: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(round(float(x) * 1000)) for x in values)


def atomic_type(g: HypergraphRepr, v: NodeTuple) -> tuple:
    unary = tuple(_row(g.relations[1][node]) for node in v)
    binary = tuple(
        _row(g.relations[2][v[p], v[q]])
        for p in range(len(v))
        for q in range(len(v))
        if p != q
    )
    return (_row(g.relations[0]), unary, binary)


def _neighbors(g: HypergraphRepr) -> List[List[int]]:
    adjacency = g.adjacency() > 0
    return [np.flatnonzero(adjacency[v] | adjacency[:, v]).tolist() for v in range(g.n)]


def _signature(g, k, colors, v, neighbors) -> tuple:
    if k == 1:
        return (colors[v], tuple(sorted(colors[(u,)] for u in neighbors[v[0]])))
    substituted = sorted(
        tuple(colors[v[:p] + (u,) + v[p + 1:]] for p in range(k))
        for u in range(g.n)
    )
    return (colors[v], tuple(substituted))


def _number(signatures: Sequence[Dict[NodeTuple, tuple]]) -> List[Dict[NodeTuple, int]]:
    """Map signatures to consecutive ids in sorted order, shared across graphs."""
    palette = sorted({s for per_graph in signatures for s in per_graph.values()})
    ids = {s: index for index, s in enumerate(palette)}
    return [{v: ids[s] for v, s in per_graph.items()} for per_graph in signatures]


def refine_jointly(
    graphs: Sequence[HypergraphRepr], k: int, max_rounds: int
) -> List[WLColoring]:
    """
    Refine several graphs on a shared palette until stable or max_rounds.

    Raises:
        UnsupportedTupleSizeError: If k is not 1, 2 or 3.
    """
    _check_k(k)
    tuples = [list(product(range(g.n), repeat=k)) for g in graphs]
    neighbors = [_neighbors(g) for g in graphs] if k == 1 else [None] * len(graphs)

    colors = _number([
        {v: atomic_type(g, v) for v in vs} for g, vs in zip(graphs, tuples)
    ])
    histories = [[Counter(c.values())] for c in colors]
    classes = len({c for per_graph in colors for c in per_graph.values()})
    rounds, stable = 0, False

    while rounds < max_rounds:
        signatures = [
            {v: _signature(g, k, c, v, nb) for v in vs}
            for g, vs, c, nb in zip(graphs, tuples, colors, neighbors)
        ]
        refined = _number(signatures)
        refined_classes = len({c for per_graph in refined for c in per_graph.values()})
        rounds += 1
        colors = refined
        for history, c in zip(histories, colors):
            history.append(Counter(c.values()))
        if refined_classes == classes:
            stable = True
            break
        classes = refined_classes

    logger.debug(f"{k}-WL ran {rounds} rounds over {len(graphs)} graph(s), stable={stable}")
    return [
        WLColoring(k=k, colors=c, rounds=rounds, stable=stable, history=h)
        for c, h in zip(colors, histories)
    ]


def wl_refine(g: HypergraphRepr, k: int, max_rounds: int = 100) -> WLColoring:
    """
    Refine the k-tuples of one graph.

    Examples:
        >>> from apps.hypergraph.services.representation import from_edge_list
        >>> c6 = from_edge_list(6, [(i, (i + 1) % 6) for i in range(6)])
        >>> len(wl_refine(c6, 1).histogram)
        1
    """
    return refine_jointly([g], k, max_rounds)[0]


def wl_certificate(
    g1: HypergraphRepr, g2: HypergraphRepr, k: int, max_rounds: int = 100
) -> WLCertificate:
    """
    Compare two graphs round by round.

    Graphs of different sizes are distinguishable at round 0 with an empty
    diff.
    """
    _check_k(k)
    if g1.n != g2.n:
        return WLCertificate(k=k, distinguishable=True, first_round=0)
    first, second = refine_jointly([g1, g2], k, max_rounds)
    for round_index, (a, b) in enumerate(zip(first.history, second.history)):
        if a != b:
            diff = {
                color: (a.get(color, 0), b.get(color, 0))
                for color in sorted(set(a) | set(b))
                if a.get(color, 0) != b.get(color, 0)
            }
            return WLCertificate(
                k=k, distinguishable=True, first_round=round_index,
                diff=diff, rounds=first.rounds,
            )
    return WLCertificate(k=k, distinguishable=False, rounds=first.rounds)


def wl_distinguish(
    g1: HypergraphRepr, g2: HypergraphRepr, k: int, max_rounds: int = 100
) -> bool:
    """True iff the color multisets of the two graphs differ."""
    return wl_certificate(g1, g2, k, max_rounds).distinguishable


def format_certificate(certificate: WLCertificate) -> str:
    """Plain-text rendering used by the wl command."""
    if not certificate.distinguishable:
        return (
            f"{certificate.k}-WL: indistinguishable "
            f"(color multisets equal after {certificate.rounds} rounds)"
        )
    lines = [
        f"{certificate.k}-WL: distinguishable at round {certificate.first_round}",
    ]
    if not certificate.diff:
        lines.append("  graphs have different node counts")
    for color, (count1, count2) in certificate.diff.items():
        lines.append(f"  color {color}: {count1} vs {count2}")
    return "\n".join(lines)
