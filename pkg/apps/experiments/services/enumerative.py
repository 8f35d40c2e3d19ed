"""
Enumerative training: fit every graph up to size N, then test beyond it.

A quantized, weight-shared max-aggregation model is trained on all labeled
graphs with 1..N nodes. Only when it fits that set exactly is it tested:
exhaustively on every graph with test_n nodes and on balanced random
graphs at the sampled sizes. Without a perfect fit the run reports the
premise as unmet and makes no generalization claim.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from apps.datasets.services.registry import TaskDefinition, get_task
from apps.datasets.services.sample import Sample
from apps.datasets.services.seeds import derive_seed
from apps.experiments.services.config import EnumTrainConfig
from apps.experiments.services.trainer import optimize
from apps.hypergraph.services.enumeration import enumerate_labeled_graphs, labeled_graph_count
from apps.hypergraph.services.representation import HypergraphRepr, TaskTarget
from apps.relnn.services.model import predict, predictions
from apps.relnn.services.params import ModelParams

logger = logging.getLogger(__name__)

GENERALIZED = 'generalized'
COUNTEREXAMPLE = 'counterexample found'
PREMISE_UNMET = 'premise unmet'


@dataclass
class EnumVerdict:
    """
    Outcome of one enumerative-training run.

    Attributes:
        task: Task id.
        max_train_n: N.
        quant_bits: Activation bits.
        fit_achieved: Whether training error on all graphs up to N reached 0.
        training_errors: Misclassified training graphs after the last epoch.
        training_count: Number of training graphs.
        epochs_run: Epochs spent before fitting or exhausting the budget.
        exhaustive_error_count: Errors over all graphs at test_n (None without a fit).
        exhaustive_count: Graphs tested at test_n.
        sampled_error_count: Size -> errors over the sampled graphs (empty without a fit).
        sampled_count: Random graphs per sampled size.
        verdict: generalized, counterexample found, or premise unmet.
    """
    task: str
    max_train_n: int
    quant_bits: int
    fit_achieved: bool
    training_errors: int
    training_count: int
    epochs_run: int
    exhaustive_error_count: Optional[int] = None
    exhaustive_count: int = 0
    sampled_error_count: Dict[int, int] = field(default_factory=dict)
    sampled_count: int = 0
    verdict: str = PREMISE_UNMET

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['sampled_error_count'] = {str(n): c for n, c in self.sampled_error_count.items()}
        return data


def _graph_sample(task: TaskDefinition, g: HypergraphRepr) -> Sample:
    label = np.asarray(task.label(g), dtype=np.int64)
    return Sample(input=g, target=TaskTarget(arity=0, labels=label), provenance={})


def complete_presentation(task: TaskDefinition, max_n: int) -> List[Sample]:
    """Every labeled graph with 1..max_n nodes, labeled by the task's oracle."""
    samples = []
    for n in range(1, max_n + 1):
        samples.extend(_graph_sample(task, g) for g in enumerate_labeled_graphs(n))
    return samples


def count_errors(params: ModelParams, samples: Iterable[Sample]) -> Tuple[int, int]:
    """
    Returns:
        Tuple of (misclassified graphs, graphs seen).
    """
    errors = seen = 0
    for sample in samples:
        predicted = predictions(predict(params, sample.input))
        errors += int(not np.array_equal(predicted, sample.target.labels))
        seen += 1
    return errors, seen


def sampled_graphs(task: TaskDefinition, n: int, count: int, seed: int) -> List[Sample]:
    """Balanced random task samples at size n, positives at even indices."""
    return [
        task.generate(n, derive_seed(seed, 'sampled', n, index), index % 2 == 0, None, True)
        for index in range(count)
    ]


def enumerative_train(cfg: EnumTrainConfig) -> EnumVerdict:
    """
    Train on the complete presentation up to cfg.max_train_n and test.

    Training stops as soon as every training graph is classified
    correctly, or after cfg.epochs epochs.
    """
    task = get_task(cfg.task)
    train = complete_presentation(task, cfg.max_train_n)
    logger.info(f"Enumerative training of {cfg.task} on {len(train)} graphs (n <= {cfg.max_train_n})")

    epochs_run = 0

    def count_epoch(epoch, loss, val_accuracy):
        nonlocal epochs_run
        epochs_run = epoch

    outcome = optimize(
        cfg.model_config(),
        train,
        [],
        cfg.seed,
        epochs=cfg.epochs,
        lr=cfg.lr,
        decay_epochs=(),
        accumulate=cfg.accumulate,
        on_epoch=count_epoch,
        stop_when=lambda params: count_errors(params, train)[0] == 0,
    )
    params = outcome.params
    training_errors, _ = count_errors(params, train)
    verdict = EnumVerdict(
        task=cfg.task,
        max_train_n=cfg.max_train_n,
        quant_bits=cfg.quant_bits,
        fit_achieved=training_errors == 0,
        training_errors=training_errors,
        training_count=len(train),
        epochs_run=epochs_run,
    )
    if not verdict.fit_achieved:
        logger.warning(
            f"{cfg.task}: {training_errors} training errors after {epochs_run} epochs, "
            f"premise unmet"
        )
        return verdict

    exhaustive = (_graph_sample(task, g) for g in enumerate_labeled_graphs(cfg.test_n))
    verdict.exhaustive_error_count, verdict.exhaustive_count = count_errors(params, exhaustive)
    for n in cfg.sampled_sizes:
        errors, _ = count_errors(params, sampled_graphs(task, n, cfg.sampled_count, cfg.seed))
        verdict.sampled_error_count[n] = errors
    verdict.sampled_count = cfg.sampled_count

    total = verdict.exhaustive_error_count + sum(verdict.sampled_error_count.values())
    verdict.verdict = GENERALIZED if total == 0 else COUNTEREXAMPLE
    logger.info(
        f"{cfg.task}: fit after {epochs_run} epochs; "
        f"{verdict.exhaustive_error_count}/{labeled_graph_count(cfg.test_n)} exhaustive errors, "
        f"sampled errors {verdict.sampled_error_count}"
    )
    return verdict
