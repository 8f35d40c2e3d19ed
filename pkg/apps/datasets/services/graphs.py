"""
Erdős–Rényi graphs with tiered edge budgets and component duplication.

The edge count is drawn as Poisson(target) for the tier's target and
clamped to C(n, 2):

    n       -> n
    2n      -> 2n
    nlogn   -> round(n ln n)
    half_n2 -> round(n^2 / 2)

With duplication on, half of the graphs are first split into 2..5 equal
components: the first component is sampled and its edge pattern copied
into the others; nodes left over by the split stay isolated. Then
Binomial(n, 1/n) extra edges are added anywhere, crossing components
included, and listed in the provenance.
"""
import logging
import math
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from apps.datasets.exceptions import DatasetError
from apps.hypergraph.services.enumeration import node_pairs
from apps.hypergraph.services.representation import Edge, HypergraphRepr, from_edge_list

logger = logging.getLogger(__name__)

TIERS = ('n', '2n', 'nlogn', 'half_n2')
DUPLICATION_PROBABILITY = 0.5
MIN_PARTS, MAX_PARTS = 2, 5


def pair_capacity(n: int) -> int:
    return n * (n - 1) // 2


def tier_target(n: int, tier: str) -> int:
    """Edge target of a tier on n nodes (natural log for nlogn)."""
    if tier == 'n':
        return n
    if tier == '2n':
        return 2 * n
    if tier == 'nlogn':
        return int(round(n * math.log(n))) if n > 1 else 0
    if tier == 'half_n2':
        return int(round(n * n / 2))
    raise DatasetError(f"unknown edge tier '{tier}', expected one of {TIERS}")


def choose_tier(tier: Optional[str], rng: np.random.Generator) -> str:
    """The given tier, or one drawn uniformly when None."""
    if tier is None:
        return TIERS[int(rng.integers(len(TIERS)))]
    tier_target(2, tier)
    return tier


def edge_budget(n: int, tier: str, rng: np.random.Generator) -> Tuple[int, Dict[str, Any]]:
    """Poisson-drawn edge count for the tier, clamped to C(n, 2)."""
    target = tier_target(n, tier)
    capacity = pair_capacity(n)
    drawn = int(rng.poisson(target))
    count = min(drawn, capacity)
    return count, {
        'target_edges': target,
        'drawn_edges': drawn,
        'clamped': drawn > capacity or target > capacity,
    }


def split_parts(n: int, duplicate: bool, rng: np.random.Generator) -> int:
    """How many equal components to build; 1 means no duplication."""
    if not duplicate or rng.random() >= DUPLICATION_PROBABILITY:
        return 1
    parts = int(rng.integers(MIN_PARTS, MAX_PARTS + 1))
    while parts > 1 and n // parts < 2:
        parts -= 1
    return parts


def copy_components(base: List[Edge], size: int, parts: int) -> List[Edge]:
    """Repeat the first component's edges at offsets size, 2*size, ..."""
    return [
        (u + part * size, v + part * size) for part in range(parts) for u, v in base
    ]


def random_missing_pairs(
    n: int, present: Set[Edge], count: int, rng: np.random.Generator
) -> List[Edge]:
    missing = [pair for pair in node_pairs(n) if pair not in present]
    if not missing or count <= 0:
        return []
    picks = rng.choice(len(missing), size=min(count, len(missing)), replace=False)
    return [missing[int(i)] for i in sorted(picks)]


def extra_edge_count(n: int, rng: np.random.Generator) -> int:
    return int(rng.binomial(n, 1.0 / n))


def sample_er_edges(
    n: int,
    tier: Optional[str],
    duplicate: bool,
    rng: np.random.Generator,
) -> Tuple[List[Edge], Dict[str, Any]]:
    """
    Edge list and provenance of one Erdős–Rényi draw.

    Raises:
        DatasetError: If n < 2 or the tier is unknown.
    """
    if n < 2:
        raise DatasetError(f"random graphs need n >= 2, got {n}")
    tier = choose_tier(tier, rng)
    parts = split_parts(n, duplicate, rng)
    size = n // parts

    count, budget = edge_budget(size, tier, rng)
    pairs = node_pairs(size)
    picks = rng.choice(len(pairs), size=count, replace=False) if count else []
    base = sorted(pairs[int(i)] for i in picks)
    edges = copy_components(base, size, parts)

    extra = []
    if parts > 1:
        extra = random_missing_pairs(n, set(edges), extra_edge_count(n, rng), rng)
        edges = edges + extra

    provenance = {
        'tier': tier,
        **budget,
        'parts': parts,
        'component_size': size,
        'extra_edges': [list(pair) for pair in extra],
    }
    return sorted(edges), provenance


def gen_er_graph(
    n: int,
    tier: Optional[str] = None,
    duplicate: bool = True,
    seed: int = 0,
) -> HypergraphRepr:
    """
    Seeded Erdős–Rényi graph.

    Examples:
        >>> g1 = gen_er_graph(10, 'n', False, seed=7)
        >>> g2 = gen_er_graph(10, 'n', False, seed=7)
        >>> g1.edge_list() == g2.edge_list()
        True
    """
    edges, _ = sample_er_edges(n, tier, duplicate, np.random.default_rng(seed))
    return from_edge_list(n, edges)
