"""
Dataset specs and split construction.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

from apps.datasets.exceptions import DatasetError
from apps.datasets.services.graphs import tier_target
from apps.datasets.services.registry import get_task
from apps.datasets.services.sample import Sample
from apps.datasets.services.seeds import derive_seed

logger = logging.getLogger(__name__)

SPLITS = ('train', 'val', 'test')
DEFAULT_SPLIT_SIZES = (800, 100, 300)

Splits = Dict[str, List[Sample]]


@dataclass(frozen=True)
class DatasetSpec:
    """
    What to generate.

    Attributes:
        task: Task id from the registry.
        n: Node count of every sample.
        splits: Sample counts for train, val and test.
        seed: Master seed.
        tier: Edge tier, or None to draw one per sample.
        duplicate: Whether component duplication may fire.
    """
    task: str
    n: int
    splits: Tuple[int, int, int] = DEFAULT_SPLIT_SIZES
    seed: int = 0
    tier: Optional[str] = None
    duplicate: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'splits', tuple(int(size) for size in self.splits))
        get_task(self.task)
        if self.n < 2:
            raise DatasetError(f"datasets need n >= 2, got {self.n}")
        if len(self.splits) != len(SPLITS) or min(self.splits) < 0:
            raise DatasetError(f"split sizes must be three non-negative counts, got {self.splits}")
        if self.tier is not None:
            tier_target(self.n, self.tier)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['splits'] = list(self.splits)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DatasetSpec':
        known = {name: data[name] for name in cls.__dataclass_fields__ if name in data}
        return cls(**known)


def generate_split(spec: DatasetSpec, split: str, size: int) -> List[Sample]:
    """
    Samples 0..size-1 of one split, each from derive_seed(seed, split, index).

    Balanced tasks alternate the wanted label, positives at even indices.
    """
    task = get_task(spec.task)
    return [
        task.generate(
            spec.n,
            derive_seed(spec.seed, split, index),
            index % 2 == 0,
            spec.tier,
            spec.duplicate,
        )
        for index in range(size)
    ]


def build_dataset(spec: DatasetSpec) -> Splits:
    """Generate the train, val and test splits of a spec."""
    splits = {}
    for split, size in zip(SPLITS, spec.splits):
        splits[split] = generate_split(spec, split, size)
        logger.info(f"Generated {size} {spec.task} samples for {split} (n={spec.n})")
    return splits
