"""
Generated samples.
"""
from dataclasses import dataclass, field
from typing import Any, Dict

from apps.hypergraph.services.representation import HypergraphRepr, TaskTarget


@dataclass(frozen=True, eq=False)
class Sample:
    """
    One labeled input.

    Attributes:
        input: The graph the model reads.
        target: Oracle labels (and query mask) at the task's arity.
        provenance: JSON-ready generator trace (seed, attempt, tier, parts...).
    """
    input: HypergraphRepr
    target: TaskTarget
    provenance: Dict[str, Any] = field(default_factory=dict)
