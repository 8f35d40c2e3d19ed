"""
Labeled sample generators for the graph tasks.

Each generator takes a node count, a seed and (for balanced graph-level
tasks) the wanted label, and returns a Sample whose target is the oracle
applied to the emitted input. Attempts that cannot reach the wanted label
raise GenerationError and are regenerated from the next derived seed.
"""
import logging
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from apps.datasets.exceptions import DatasetError, GenerationError
from apps.datasets.services.graphs import (
    choose_tier,
    copy_components,
    edge_budget,
    extra_edge_count,
    sample_er_edges,
    split_parts,
)
from apps.datasets.services.sample import Sample
from apps.datasets.services.seeds import with_regeneration
from apps.hypergraph.services.enumeration import node_pairs
from apps.hypergraph.services.representation import Edge, TaskTarget, from_edge_list
from apps.oracles.services.connectivity import connectivity_oracle, st_connectivity_oracle
from apps.oracles.services.substructure import SUBSTRUCTURES, substructure_oracle

logger = logging.getLogger(__name__)

# Replacement moves allowed per attempt, as a multiple of C(n, 2).
MOVE_BUDGET_FACTOR = 4

MIN_NODES = {'link3': 3, 'link4': 4, 'triangle': 3, 'clique4': 4}

Neighbors = List[Set[int]]


def creates_substructure(kind: str, neighbors: Neighbors, a: int, b: int) -> bool:
    """
    Whether adding edge (a, b) to a graph free of `kind` creates one.

    Every occurrence after the addition uses the new edge, so only its
    neighborhood is inspected.
    """
    na, nb = neighbors[a] - {b}, neighbors[b] - {a}
    if kind == 'link3':
        return bool(na or nb)
    if kind == 'triangle':
        return bool(na & nb)
    if kind == 'clique4':
        common = sorted(na & nb)
        return any(d in neighbors[c] for i, c in enumerate(common) for d in common[i + 1:])
    if kind == 'link4':
        if na and nb:
            return True
        return any(neighbors[c] - {b} for c in nb) or any(neighbors[c] - {a} for c in na)
    raise DatasetError(f"unknown substructure '{kind}', expected one of {SUBSTRUCTURES}")


def _neighbor_sets(n: int, edges: List[Edge]) -> Neighbors:
    neighbors = [set() for _ in range(n)]
    for u, v in edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    return neighbors


def _edges_of(neighbors: Neighbors) -> List[Edge]:
    return sorted((u, v) for u, adjacent in enumerate(neighbors) for v in adjacent if u < v)


def grow_negative(
    kind: str,
    neighbors: Neighbors,
    candidates: List[Edge],
    limit: int,
    rng: np.random.Generator,
) -> int:
    """
    Add candidate edges in random order, skipping any that would create
    `kind`, until `limit` edges are present or no candidate is left (the
    graph is then maximal). Returns the number of edges added.
    """
    added = 0
    present = sum(len(adjacent) for adjacent in neighbors) // 2
    for index in rng.permutation(len(candidates)):
        if present + added >= limit:
            break
        a, b = candidates[int(index)]
        if b in neighbors[a] or creates_substructure(kind, neighbors, a, b):
            continue
        neighbors[a].add(b)
        neighbors[b].add(a)
        added += 1
    return added


def negative_graph(
    kind: str,
    n: int,
    tier: Optional[str],
    duplicate: bool,
    rng: np.random.Generator,
) -> Tuple[Neighbors, Dict[str, Any]]:
    """
    A graph without `kind`, grown edge by edge up to a tier budget.

    With duplication, the first component is grown and copied, then the
    extra edges are drawn from pairs that keep the graph negative.
    """
    tier = choose_tier(tier, rng)
    parts = split_parts(n, duplicate, rng)
    size = n // parts
    limit, budget = edge_budget(size, tier, rng)

    component = [set() for _ in range(size)]
    grow_negative(kind, component, node_pairs(size), limit, rng)
    neighbors = _neighbor_sets(n, copy_components(_edges_of(component), size, parts))

    extra = 0
    if parts > 1:
        total = len(_edges_of(neighbors))
        extra = grow_negative(
            kind, neighbors, node_pairs(n), total + extra_edge_count(n, rng), rng
        )
    provenance = {
        'tier': tier,
        **budget,
        'parts': parts,
        'component_size': size,
        'extra_edges': extra,
    }
    return neighbors, provenance


def replace_until_positive(
    kind: str,
    neighbors: Neighbors,
    rng: np.random.Generator,
    budget: int,
) -> int:
    """
    Move one present edge to a missing slot per step until `kind` appears.

    The edge count never changes. Returns the number of moves made.

    Raises:
        GenerationError: If there is nothing to move or the budget runs out.
    """
    n = len(neighbors)
    for move in range(1, budget + 1):
        edges = _edges_of(neighbors)
        missing = [pair for pair in node_pairs(n) if pair[1] not in neighbors[pair[0]]]
        if not edges or not missing:
            raise GenerationError(f"no edge replacement possible on {len(edges)} edges")
        u, v = edges[int(rng.integers(len(edges)))]
        a, b = missing[int(rng.integers(len(missing)))]
        neighbors[u].discard(v)
        neighbors[v].discard(u)
        found = creates_substructure(kind, neighbors, a, b)
        neighbors[a].add(b)
        neighbors[b].add(a)
        if found:
            return move
    raise GenerationError(f"no {kind} after {budget} edge replacements")


def _graph_label_target(label: bool) -> TaskTarget:
    return TaskTarget(arity=0, labels=np.array(int(label), dtype=np.int64))


def gen_substructure_sample(
    kind: str,
    n: int,
    want_positive: bool,
    seed: int,
    tier: Optional[str] = None,
    duplicate: bool = True,
) -> Sample:
    """
    A graph labeled by whether it contains `kind`.

    Negatives are grown to a maximal (or budget-limited) graph without the
    substructure. Positives start from such a negative and replace present
    edges with missing ones until the substructure appears.

    Raises:
        DatasetError: If n is too small to host the substructure.
        GenerationError: If every attempt misses the wanted label.
    """
    if kind not in MIN_NODES:
        raise DatasetError(f"unknown substructure '{kind}', expected one of {SUBSTRUCTURES}")
    if n < MIN_NODES[kind]:
        raise DatasetError(f"{kind} needs at least {MIN_NODES[kind]} nodes, got {n}")

    def build(attempt_seed: int, attempt: int) -> Sample:
        rng = np.random.default_rng(attempt_seed)
        neighbors, provenance = negative_graph(kind, n, tier, duplicate, rng)
        moves = 0
        if want_positive:
            moves = replace_until_positive(
                kind, neighbors, rng, MOVE_BUDGET_FACTOR * len(node_pairs(n))
            )
        g = from_edge_list(n, _edges_of(neighbors))
        label = substructure_oracle(kind, g)
        if label != want_positive:
            raise GenerationError(f"{kind} sample came out with label {label}")
        provenance.update({
            'generator': 'substructure',
            'kind': kind,
            'seed': seed,
            'attempt': attempt,
            'moves': moves,
        })
        return Sample(input=g, target=_graph_label_target(label), provenance=provenance)

    return with_regeneration(build, seed, f"{kind} sample (seed {seed})")


def balanced_query_mask(reach: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """
    Equal numbers of positive and negative off-diagonal pairs.

    Raises:
        GenerationError: If all off-diagonal pairs share one label.
    """
    n = reach.shape[0]
    off_diagonal = ~np.eye(n, dtype=bool)
    positives = np.argwhere(reach & off_diagonal)
    negatives = np.argwhere(~reach & off_diagonal)
    if not len(positives) or not len(negatives):
        raise GenerationError(
            f"query pairs are one-sided ({len(positives)} positive, {len(negatives)} negative)"
        )
    count = min(len(positives), len(negatives))
    mask = np.zeros((n, n), dtype=np.int64)
    for pool in (positives, negatives):
        for index in rng.choice(len(pool), size=count, replace=False):
            u, v = pool[int(index)]
            mask[u, v] = 1
    return mask


def gen_connectivity_sample(
    n: int,
    k: Optional[int],
    seed: int,
    tier: Optional[str] = None,
    duplicate: bool = True,
) -> Sample:
    """
    Pairwise connectivity (within k hops, or at all) with a balanced query mask.

    Examples:
        >>> s = gen_connectivity_sample(10, None, seed=5)
        >>> int((s.target.mask * s.target.labels).sum()) * 2 == int(s.target.mask.sum())
        True
    """
    def build(attempt_seed: int, attempt: int) -> Sample:
        rng = np.random.default_rng(attempt_seed)
        edges, provenance = sample_er_edges(n, tier, duplicate, rng)
        g = from_edge_list(n, edges)
        reach = connectivity_oracle(g, k)
        mask = balanced_query_mask(reach, rng)
        provenance.update({
            'generator': 'connectivity', 'k': k, 'seed': seed, 'attempt': attempt,
        })
        target = TaskTarget(arity=2, labels=reach.astype(np.int64), mask=mask)
        return Sample(input=g, target=target, provenance=provenance)

    return with_regeneration(build, seed, f"connectivity sample (seed {seed})")


def gen_st_connectivity_sample(
    n: int,
    k: Optional[int],
    seed: int,
    want_positive: bool = True,
    tier: Optional[str] = None,
    duplicate: bool = True,
) -> Sample:
    """
    Whether the S-colored node reaches the T-colored node within k hops.

    S is drawn uniformly; T is drawn among the nodes giving the wanted label.
    """
    def build(attempt_seed: int, attempt: int) -> Sample:
        rng = np.random.default_rng(attempt_seed)
        edges, provenance = sample_er_edges(n, tier, duplicate, rng)
        reach = connectivity_oracle(from_edge_list(n, edges), k)
        source = int(rng.integers(n))
        options = [
            v for v in range(n) if v != source and bool(reach[source, v]) == want_positive
        ]
        if not options:
            raise GenerationError(f"no target node with label {want_positive}")
        target_node = options[int(rng.integers(len(options)))]
        g = from_edge_list(
            n, edges, colors={'S': [source], 'T': [target_node]}, color_names=('S', 'T')
        )
        label = st_connectivity_oracle(g, k)
        provenance.update({
            'generator': 'st_connectivity', 'k': k, 'seed': seed, 'attempt': attempt,
            'source': source, 'target': target_node,
        })
        return Sample(input=g, target=_graph_label_target(label), provenance=provenance)

    return with_regeneration(build, seed, f"S-T connectivity sample (seed {seed})")


def gen_edge_exists_sample(
    n: int,
    want_positive: bool,
    seed: int,
    tier: Optional[str] = None,
    duplicate: bool = True,
) -> Sample:
    """Negatives are edgeless; positives are random graphs with at least one edge."""
    rng = np.random.default_rng(seed)
    edges, provenance = [], {'tier': None}
    if want_positive:
        edges, provenance = sample_er_edges(n, tier, duplicate, rng)
        if not edges:
            pairs = node_pairs(n)
            edges = [pairs[int(rng.integers(len(pairs)))]]
    provenance.update({'generator': 'edge_exists', 'seed': seed, 'attempt': 1})
    g = from_edge_list(n, edges)
    return Sample(input=g, target=_graph_label_target(bool(edges)), provenance=provenance)
