"""
Recorded experiment runs.

A run trains one TrainConfig with one seed, evaluates it at every
requested size and keeps the outcome as an ExperimentRun with one
EvalRecord per size. Runs are keyed by (config hash, seed): asking for a
completed run again returns the stored result.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from django.conf import settings
from django.db import transaction
from django.utils import timezone

from apps.datasets.services.dataset import DatasetSpec, build_dataset
from apps.datasets.services.sample import Sample
from apps.experiments.models import EvalRecord, ExperimentRun, LogType
from apps.experiments.services.config import RunResult, TrainConfig
from apps.experiments.services.evaluator import evaluate
from apps.experiments.services.sweep import held_out_samples
from apps.experiments.services.trainer import train_model
from apps.experiments.utils import create_log
from apps.relnn.services.model_io import save_model

logger = logging.getLogger(__name__)

Splits = Dict[str, Sequence[Sample]]


def model_path(output_dir: Union[str, Path], config_hash: str, seed: int) -> Path:
    return Path(output_dir) / 'models' / f'{config_hash}-{seed}.json'


def training_data(cfg: TrainConfig) -> Splits:
    spec = DatasetSpec(
        task=cfg.task, n=cfg.train_n, splits=cfg.splits, seed=cfg.data_seed, tier=cfg.tier
    )
    return build_dataset(spec)


def evaluation_data(cfg: TrainConfig, splits: Splits) -> Dict[int, Sequence[Sample]]:
    """
    Test samples per eval size.

    The training size reuses the dataset's test split; other sizes get
    the test split of a dataset with the same seed at that size.
    """
    count = cfg.splits[2]
    data = {}
    for size in cfg.eval_sizes:
        if size == cfg.train_n and splits.get('test'):
            data[size] = splits['test']
        else:
            data[size] = held_out_samples(cfg.task, size, count, cfg.data_seed, cfg.tier)
    return data


def stored_result(run: ExperimentRun) -> RunResult:
    """The RunResult recorded for a completed run."""
    evaluations = list(run.evaluations.all())
    return RunResult(
        config_hash=run.config_hash,
        seed=run.seed,
        accuracies={record.eval_n: record.accuracy for record in evaluations},
        eval_wallclock_s={record.eval_n: record.wallclock_s for record in evaluations},
        train_curve=list(run.train_curve),
        val_curve=list(run.val_curve),
        best_epoch=run.best_epoch or 0,
        wallclock_s=run.wallclock_s,
        deviations=list(run.deviations),
    )


def _get_or_create_run(cfg: TrainConfig, seed: int):
    model = cfg.model
    return ExperimentRun.objects.get_or_create(
        config_hash=cfg.config_hash(),
        seed=seed,
        defaults={
            'family': model.family,
            'max_arity': model.max_arity,
            'depth_policy': model.depth_policy,
            'aggregator': model.aggregator,
            'task': cfg.task,
            'train_n': cfg.train_n,
            'config': cfg.to_dict(),
            'deviations': list(cfg.deviations),
        },
    )


def run_experiment(
    cfg: TrainConfig,
    seed: int,
    output_dir: Optional[Union[str, Path]] = None,
    data: Optional[Splits] = None,
    force: bool = False,
) -> RunResult:
    """
    Train, evaluate and record one (config, seed) run.

    Args:
        cfg: What to train.
        seed: Training seed.
        output_dir: Where the model file goes; defaults to settings.RELNN_OUTPUT_DIR.
        data: Train/val/test splits to use instead of generating them.
        force: Retrain even if a completed run exists.

    Returns:
        The run's RunResult.

    Raises:
        ExperimentError: If training diverges or the data does not fit the model;
            the run is marked failed first.
    """
    run, created = _get_or_create_run(cfg, seed)
    if not created and run.status == 'completed' and not force:
        logger.info(f"Run {run.config_hash}/{seed} already completed")
        return stored_result(run)

    run.status = 'running'
    run.started_at = timezone.now()
    run.error_message = ''
    run.save()
    create_log(run, f"Starting {cfg.model.family}-{cfg.model.max_arity} {cfg.model.aggregator} on {cfg.task} (seed {seed})")
    for deviation in cfg.deviations:
        create_log(run, f"Deviation: {deviation}", LogType.WARNING)

    try:
        splits = data if data is not None else training_data(cfg)
        params, result = train_model(cfg, splits, seed)
        create_log(run, f"Checkpoint from epoch {result.best_epoch}")
        result.accuracies, result.eval_wallclock_s = evaluate(params, evaluation_data(cfg, splits))
    except Exception as exc:
        run.status = 'failed'
        run.error_message = str(exc)
        run.completed_at = timezone.now()
        run.save()
        create_log(run, f"Run failed: {exc}", LogType.ERROR)
        raise

    path = save_model(params, model_path(output_dir or settings.RELNN_OUTPUT_DIR, result.config_hash, seed))

    with transaction.atomic():
        run.evaluations.all().delete()
        EvalRecord.objects.bulk_create([
            EvalRecord(
                run=run,
                eval_n=size,
                accuracy=result.accuracies[size],
                wallclock_s=result.eval_wallclock_s[size],
            )
            for size in sorted(result.accuracies)
        ])
        run.status = 'completed'
        run.train_curve = result.train_curve
        run.val_curve = result.val_curve
        run.best_epoch = result.best_epoch
        run.wallclock_s = result.wallclock_s
        run.model_path = str(path)
        run.completed_at = timezone.now()
        run.save()

    summary = ', '.join(f"n={n}: {acc:.1f}" for n, acc in sorted(result.accuracies.items()))
    create_log(run, f"Completed: {summary}", LogType.SUCCESS)
    return result


def result_rows(cfg: TrainConfig, results: List[RunResult]) -> List[dict]:
    rows = []
    for result in results:
        rows.extend(result.rows(cfg))
    return rows
