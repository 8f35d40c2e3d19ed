"""
Adam training with gradient accumulation and best-validation checkpointing.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from apps.datasets.services.sample import Sample
from apps.datasets.services.seeds import derive_seed
from apps.experiments.exceptions import DivergenceError, ExperimentError
from apps.experiments.services.config import RunResult, TrainConfig
from apps.experiments.services.evaluator import accuracy
from apps.relnn.services.config import ModelConfig, recurrent_rounds
from apps.relnn.services.model import loss_and_grads
from apps.relnn.services.params import ModelParams, init_params
from apps.tensor_core.exceptions import NonFiniteError
from apps.tensor_core.services.adam import AdamState, adam_step

logger = logging.getLogger(__name__)

# (epoch, mean loss, validation accuracy or None) after every epoch
EpochCallback = Callable[[int, float, Optional[float]], None]


@dataclass
class TrainingOutcome:
    """
    Weights and curves of one optimization.

    Attributes:
        params: Best-validation checkpoint.
        final_params: Weights after the last epoch.
        train_curve: Mean loss per epoch.
        val_curve: Validation accuracy per epoch, initial model at index 0.
        best_epoch: Epoch the checkpoint was taken after.
        train_accuracy: Accuracy of the checkpoint on the training split.
    """
    params: ModelParams
    final_params: ModelParams
    train_curve: List[float] = field(default_factory=list)
    val_curve: List[float] = field(default_factory=list)
    best_epoch: int = 0
    train_accuracy: Optional[float] = None


def _sum_into(total: Dict[str, np.ndarray], grads: Dict[str, np.ndarray]) -> None:
    for name, grad in grads.items():
        if name in total:
            total[name] = total[name] + grad
        else:
            total[name] = grad


def optimize(
    model: ModelConfig,
    train: Sequence[Sample],
    val: Sequence[Sample],
    seed: int,
    epochs: int,
    lr: float,
    decay_epochs: Sequence[int] = (50, 80),
    decay_factor: float = 0.1,
    accumulate: int = 16,
    on_epoch: Optional[EpochCallback] = None,
    stop_when: Optional[Callable[[ModelParams], bool]] = None,
) -> TrainingOutcome:
    """
    Train a fresh model.

    Every epoch visits the training graphs in a seeded random order. The
    gradients of `accumulate` consecutive graphs are summed before one Adam
    step. Recurrent models draw their depth per graph. Validation accuracy
    is recorded before training and after each epoch; the checkpoint with
    the highest validation accuracy is returned, the earliest on ties.

    Args:
        stop_when: Checked against the current weights after each epoch;
            training ends early once it returns True.

    Raises:
        DivergenceError: On a non-finite loss or gradient, with the epoch (1-based).
        ExperimentError: If there are epochs to run but no training graphs.
    """
    if epochs > 0 and not train:
        raise ExperimentError("cannot train on an empty training split")

    rng = np.random.default_rng(derive_seed(seed, 'train'))
    params = init_params(model, derive_seed(seed, 'init'))
    state = AdamState.create(
        params.named_arrays(), lr=lr, decay_epochs=decay_epochs, decay_factor=decay_factor
    )
    recurrent = model.depth_policy == 'recurrent'

    outcome = TrainingOutcome(params=params, final_params=params)
    best_val = None
    if val:
        best_val = accuracy(params, val)
        outcome.val_curve.append(best_val)
        logger.info(f"Initial validation accuracy {best_val:.1f}")

    for epoch in range(1, epochs + 1):
        losses = []
        order = rng.permutation(len(train))
        for start in range(0, len(order), accumulate):
            batch: Dict[str, np.ndarray] = {}
            for index in order[start:start + accumulate]:
                sample = train[int(index)]
                depth = recurrent_rounds(sample.input.n, rng) if recurrent else None
                loss, grads, _ = loss_and_grads(params, sample.input, sample.target, depth)
                if not math.isfinite(loss):
                    raise DivergenceError(epoch, f"loss is {loss}")
                losses.append(loss)
                _sum_into(batch, grads)
            try:
                arrays, state = adam_step(state, params.named_arrays(), batch, epoch)
            except NonFiniteError as exc:
                raise DivergenceError(epoch, str(exc)) from exc
            params = params.with_arrays(arrays)

        mean_loss = float(np.mean(losses)) if losses else 0.0
        outcome.train_curve.append(mean_loss)
        val_accuracy = None
        if val:
            val_accuracy = accuracy(params, val)
            outcome.val_curve.append(val_accuracy)
            if val_accuracy > best_val:
                best_val = val_accuracy
                outcome.params = params
                outcome.best_epoch = epoch
                logger.debug(f"New best validation accuracy {val_accuracy:.1f} at epoch {epoch}")
        else:
            outcome.params = params
            outcome.best_epoch = epoch
        if on_epoch is not None:
            on_epoch(epoch, mean_loss, val_accuracy)
        if stop_when is not None and stop_when(params):
            logger.info(f"Stopping after epoch {epoch}")
            break

    outcome.final_params = params
    if train:
        outcome.train_accuracy = accuracy(outcome.params, train)
    return outcome


def train_model(
    cfg: TrainConfig,
    data: Dict[str, Sequence[Sample]],
    seed: int,
    on_epoch: Optional[EpochCallback] = None,
) -> Tuple[ModelParams, RunResult]:
    """
    Train cfg.model on data['train'], checkpointing on data['val'].

    With cfg.epochs == 0 the initial weights come back unchanged.

    Returns:
        Tuple of (checkpoint params, RunResult with curves and no accuracies yet).

    Raises:
        DivergenceError: If training diverges.
        ExperimentError: If a sample's target arity does not match the model.
    """
    train, val = list(data.get('train', ())), list(data.get('val', ()))
    for sample in train + val:
        if sample.target.arity != cfg.model.target_arity:
            raise ExperimentError(
                f"sample has arity-{sample.target.arity} labels, "
                f"model reads out at arity {cfg.model.target_arity}"
            )

    started = time.perf_counter()
    outcome = optimize(
        cfg.model,
        train,
        val,
        seed,
        epochs=cfg.epochs,
        lr=cfg.lr,
        decay_epochs=cfg.decay_epochs,
        decay_factor=cfg.decay_factor,
        accumulate=cfg.accumulate,
        on_epoch=on_epoch,
    )
    result = RunResult(
        config_hash=cfg.config_hash(),
        seed=seed,
        train_curve=outcome.train_curve,
        val_curve=outcome.val_curve,
        best_epoch=outcome.best_epoch,
        wallclock_s=time.perf_counter() - started,
        deviations=list(cfg.deviations),
    )
    logger.info(
        f"Trained {cfg.model.family}-{cfg.model.max_arity} on {cfg.task} "
        f"(seed {seed}), best epoch {outcome.best_epoch}"
    )
    return outcome.params, result
