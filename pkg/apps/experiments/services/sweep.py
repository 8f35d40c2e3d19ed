"""
Size-generalization sweeps.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from django.conf import settings

from apps.datasets.services.dataset import DatasetSpec, generate_split
from apps.datasets.services.sample import Sample
from apps.experiments.services.evaluator import evaluate
from apps.relnn.services.params import ModelParams

logger = logging.getLogger(__name__)

DEFAULT_TEST_COUNT = 300


@dataclass(frozen=True)
class SweepPoint:
    eval_n: int
    accuracy: float
    wallclock_s: float


def held_out_samples(
    task: str, n: int, count: int, seed: int, tier: Optional[str] = None
) -> List[Sample]:
    """
    The first `count` test-split samples of the dataset (task, n, seed).

    Sample seeds do not depend on the split sizes, so these are exactly the
    test samples a full dataset with the same seed contains.
    """
    spec = DatasetSpec(task=task, n=n, splits=(0, 0, count), seed=seed, tier=tier)
    return generate_split(spec, 'test', count)


def size_generalization_sweep(
    params: ModelParams,
    task: str,
    sizes: Optional[Sequence[int]] = None,
    seed: int = 0,
    count: int = DEFAULT_TEST_COUNT,
    tier: Optional[str] = None,
) -> List[SweepPoint]:
    """
    Accuracy of `params` on fresh test graphs of every size.

    Sizes default to settings.RELNN['SWEEP_SIZES'] (10..80 step 10).
    """
    sizes = tuple(sizes or settings.RELNN['SWEEP_SIZES'])
    data = {n: held_out_samples(task, n, count, seed, tier) for n in sizes}
    accuracies, seconds = evaluate(params, data)
    points = [SweepPoint(n, accuracies[n], seconds[n]) for n in sorted(accuracies)]
    logger.info(
        f"Sweep of {task} over n={list(sizes)}: "
        + ', '.join(f"{p.eval_n}:{p.accuracy:.1f}" for p in points)
    )
    return points


def sweep_rows(
    points: Sequence[SweepPoint],
    params: ModelParams,
    task: str,
    train_n: Optional[int],
    seed: int,
    config_hash: Optional[str] = None,
) -> List[Dict[str, Any]]:
    """Metrics rows for a sweep of a model loaded outside any recorded run."""
    cfg = params.config
    return [
        {
            'config_hash': config_hash or cfg.config_hash(),
            'family': cfg.family,
            'B': cfg.max_arity,
            'D_policy': cfg.depth_policy,
            'agg': cfg.aggregator,
            'task': task,
            'train_n': train_n if train_n is not None else '',
            'eval_n': point.eval_n,
            'seed': seed,
            'accuracy': point.accuracy,
            'wallclock_s': point.wallclock_s,
        }
        for point in points
    ]
