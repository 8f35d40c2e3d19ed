"""
Accuracy on scored positions.
"""
import logging
import time
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from apps.datasets.services.sample import Sample
from apps.experiments.exceptions import EmptyMaskError
from apps.relnn.services.model import predict, predictions
from apps.relnn.services.params import ModelParams

logger = logging.getLogger(__name__)


def correct_counts(
    params: ModelParams, samples: Sequence[Sample], depth: Optional[int] = None
) -> Tuple[int, int]:
    """
    Correct predictions and scored positions summed over samples.

    Returns:
        Tuple of (correct, scored).
    """
    correct = scored = 0
    for sample in samples:
        target = sample.target
        mask = target.scored.astype(bool)
        hits = predictions(predict(params, sample.input, depth)) == target.labels
        correct += int(np.count_nonzero(hits & mask))
        scored += int(np.count_nonzero(mask))
    return correct, scored


def accuracy(params: ModelParams, samples: Sequence[Sample], depth: Optional[int] = None) -> float:
    """
    Percentage of scored positions predicted correctly.

    Raises:
        EmptyMaskError: If the samples score no position at all.
    """
    correct, scored = correct_counts(params, samples, depth)
    if scored == 0:
        raise EmptyMaskError(f"{len(samples)} samples score no position")
    return 100.0 * correct / scored


def evaluate(
    params: ModelParams, data_by_size: Dict[int, Sequence[Sample]]
) -> Tuple[Dict[int, float], Dict[int, float]]:
    """
    Accuracy at every graph size.

    Recurrent models run eval_rounds(n) layers on each graph.

    Returns:
        Tuple of (size -> accuracy, size -> seconds spent).
    """
    accuracies, seconds = {}, {}
    for size in sorted(data_by_size):
        started = time.perf_counter()
        accuracies[size] = accuracy(params, data_by_size[size])
        seconds[size] = time.perf_counter() - started
        logger.info(f"Accuracy at n={size}: {accuracies[size]:.1f}")
    return accuracies, seconds
