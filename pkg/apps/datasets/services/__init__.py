"""
Dataset services.

This module exports the seeded generators, the task registry and the
dataset file format.
"""
from .dataset import DEFAULT_SPLIT_SIZES, SPLITS, DatasetSpec, build_dataset, generate_split
from .family import family_from_graph, family_graph, gen_family_tree, gen_kinship_sample
from .generators import (
    gen_connectivity_sample,
    gen_edge_exists_sample,
    gen_st_connectivity_sample,
    gen_substructure_sample,
)
from .graphs import TIERS, gen_er_graph, sample_er_edges, tier_target
from .registry import TASKS, TaskDefinition, check_labels, get_task
from .sample import Sample
from .seeds import derive_seed, with_regeneration
from .storage import (
    read_manifest,
    read_spec,
    read_split,
    sample_from_json,
    sample_to_json,
    write_dataset,
)

__all__ = [
    'DEFAULT_SPLIT_SIZES',
    'SPLITS',
    'DatasetSpec',
    'build_dataset',
    'generate_split',
    'family_from_graph',
    'family_graph',
    'gen_family_tree',
    'gen_kinship_sample',
    'gen_connectivity_sample',
    'gen_edge_exists_sample',
    'gen_st_connectivity_sample',
    'gen_substructure_sample',
    'TIERS',
    'gen_er_graph',
    'sample_er_edges',
    'tier_target',
    'TASKS',
    'TaskDefinition',
    'check_labels',
    'get_task',
    'Sample',
    'derive_seed',
    'with_regeneration',
    'read_manifest',
    'read_spec',
    'read_split',
    'sample_from_json',
    'sample_to_json',
    'write_dataset',
]
