"""
Task registry: task id -> generator, target arity, input channels, oracle.
"""
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from apps.datasets.exceptions import DatasetError
from apps.datasets.services.family import (
    GENDER_COLORS,
    PARENT_RELATIONS,
    family_from_graph,
    gen_kinship_sample,
)
from apps.datasets.services.generators import (
    gen_connectivity_sample,
    gen_edge_exists_sample,
    gen_st_connectivity_sample,
    gen_substructure_sample,
)
from apps.datasets.services.sample import Sample
from apps.hypergraph.services.representation import EDGE, HypergraphRepr
from apps.oracles.services.connectivity import connectivity_oracle, st_connectivity_oracle
from apps.oracles.services.kinship import kinship_oracle
from apps.oracles.services.substructure import edge_exists, substructure_oracle

# generate(n, seed, want_positive, tier, duplicate) -> Sample
Generator = Callable[[int, int, bool, Optional[str], bool], Sample]
Labeler = Callable[[HypergraphRepr], np.ndarray]


@dataclass(frozen=True)
class TaskDefinition:
    """
    One trainable task.

    Attributes:
        name: Task id.
        target_arity: Arity of the labels.
        colors: Unary color channels of the inputs.
        relations: Binary predicates of the inputs (besides equality).
        generate: Sample generator.
        label: Oracle recomputing the labels of an input.
        balanced: Whether samples alternate the wanted graph-level label.
    """
    name: str
    target_arity: int
    colors: Tuple[str, ...]
    relations: Tuple[str, ...]
    generate: Generator
    label: Labeler
    balanced: bool = False

    @property
    def input_channels(self) -> Tuple[int, int, int]:
        """Model input channels at arities 0, 1 and 2 (equality included)."""
        return (1, len(self.colors), len(self.relations) + 1)


def _substructure(kind, n, seed, want_positive, tier, duplicate):
    return gen_substructure_sample(kind, n, want_positive, seed, tier, duplicate)


def _connectivity(k, n, seed, want_positive, tier, duplicate):
    return gen_connectivity_sample(n, k, seed, tier, duplicate)


def _st_connectivity(k, n, seed, want_positive, tier, duplicate):
    return gen_st_connectivity_sample(n, k, seed, want_positive, tier, duplicate)


def _kinship(relation, n, seed, want_positive, tier, duplicate):
    return gen_kinship_sample(relation, n, seed)


def _edge_exists(n, seed, want_positive, tier, duplicate):
    return gen_edge_exists_sample(n, want_positive, seed, tier, duplicate)


def _graph_label(value) -> np.ndarray:
    return np.array(int(value), dtype=np.int64)


def _substructure_task(kind: str) -> TaskDefinition:
    return TaskDefinition(
        name=kind,
        target_arity=0,
        colors=(),
        relations=(EDGE,),
        generate=partial(_substructure, kind),
        label=lambda g: _graph_label(substructure_oracle(kind, g)),
        balanced=True,
    )


def _connectivity_task(name: str, k: Optional[int]) -> TaskDefinition:
    return TaskDefinition(
        name=name,
        target_arity=2,
        colors=(),
        relations=(EDGE,),
        generate=partial(_connectivity, k),
        label=lambda g: connectivity_oracle(g, k).astype(np.int64),
    )


def _kinship_task(relation: str) -> TaskDefinition:
    return TaskDefinition(
        name=relation,
        target_arity=2,
        colors=GENDER_COLORS,
        relations=PARENT_RELATIONS,
        generate=partial(_kinship, relation),
        label=lambda g: kinship_oracle(relation, family_from_graph(g)).astype(np.int64),
    )


TASKS: Dict[str, TaskDefinition] = {
    **{kind: _substructure_task(kind) for kind in ('link3', 'link4', 'triangle', 'clique4')},
    'connectivity': _connectivity_task('connectivity', None),
    'connectivity4': _connectivity_task('connectivity4', 4),
    'st_connectivity4': TaskDefinition(
        name='st_connectivity4',
        target_arity=0,
        colors=('S', 'T'),
        relations=(EDGE,),
        generate=partial(_st_connectivity, 4),
        label=lambda g: _graph_label(st_connectivity_oracle(g, 4)),
        balanced=True,
    ),
    'grandparent': _kinship_task('grandparent'),
    'uncle': _kinship_task('uncle'),
    'edge_exists': TaskDefinition(
        name='edge_exists',
        target_arity=0,
        colors=(),
        relations=(EDGE,),
        generate=_edge_exists,
        label=lambda g: _graph_label(edge_exists(g)),
        balanced=True,
    ),
}


def get_task(name: str) -> TaskDefinition:
    """
    Raises:
        DatasetError: For an unknown task id.
    """
    if name not in TASKS:
        raise DatasetError(f"unknown task '{name}', expected one of {sorted(TASKS)}")
    return TASKS[name]


def check_labels(task: TaskDefinition, sample: Sample) -> bool:
    """Whether re-running the task's oracle reproduces the stored labels."""
    return bool(np.array_equal(task.label(sample.input), sample.target.labels))
