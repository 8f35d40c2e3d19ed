"""
Graph oracle services.

This module exports ground-truth oracles, k-WL refinement and the
counterexample constructions.
"""
from .connectivity import connectivity_oracle, st_connectivity_oracle
from .constructions import CounterexamplePair, chain_counterexample, regular_pair
from .kinship import FamilyRecord, kinship_oracle, validate_family
from .substructure import (
    clique4_count,
    edge_exists,
    simple_stats_oracle,
    substructure_oracle,
)
from .wl import (
    WLCertificate,
    WLColoring,
    format_certificate,
    wl_certificate,
    wl_distinguish,
    wl_refine,
)

ORACLE_VERSION = 1

__all__ = [
    'connectivity_oracle',
    'st_connectivity_oracle',
    'CounterexamplePair',
    'chain_counterexample',
    'regular_pair',
    'FamilyRecord',
    'kinship_oracle',
    'validate_family',
    'clique4_count',
    'edge_exists',
    'simple_stats_oracle',
    'substructure_oracle',
    'WLCertificate',
    'WLColoring',
    'format_certificate',
    'wl_certificate',
    'wl_distinguish',
    'wl_refine',
    'ORACLE_VERSION',
]
