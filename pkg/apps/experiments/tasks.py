"""
Background tasks for experiment runs.

Tasks take JSON-serializable config dicts so they can cross a broker;
with CELERY_TASK_ALWAYS_EAGER they run inline in the caller.
"""
import logging

from celery import shared_task

from apps.datasets.exceptions import DatasetError
from apps.experiments.exceptions import ExperimentError
from apps.hypergraph.exceptions import HypergraphError
from apps.oracles.exceptions import OracleError
from apps.relnn.exceptions import ModelError
from apps.tensor_core.exceptions import TensorCoreError

logger = logging.getLogger(__name__)

RUN_ERRORS = (
    ExperimentError,
    ModelError,
    DatasetError,
    OracleError,
    HypergraphError,
    TensorCoreError,
)


@shared_task
def run_experiment_task(config_data, seed, output_dir=None):
    """
    Train and record one (config, seed) run.

    Errors raised by the lab's own apps mark the run failed (run_experiment
    records it in RunLog) and come back as a failed status.

    Args:
        config_data: TrainConfig.to_dict().
        seed: Training seed.
        output_dir: Where the model file goes.

    Returns:
        dict: status plus RunResult.to_dict() on success, the error otherwise.
    """
    from apps.experiments.services.config import TrainConfig
    from apps.experiments.services.runner import run_experiment

    cfg = TrainConfig.from_dict(config_data)
    try:
        result = run_experiment(cfg, seed, output_dir)
    except RUN_ERRORS as exc:
        logger.error(f"Run {cfg.config_hash()}/{seed} failed: {exc}")
        return {
            'config_hash': cfg.config_hash(),
            'seed': seed,
            'status': 'failed',
            'error': f"{type(exc).__name__}: {exc}",
        }
    return {'status': 'completed', **result.to_dict()}
