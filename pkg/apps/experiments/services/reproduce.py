"""
Reproduction grids and batched dispatch of their runs.

Grids mirror the two accuracy tables (substructure and relations) and the
connectivity-4 size sweep. Every model uses 4 layers, width 128 (64 for
the 3-ary HO-GNN and 4-ary NLM) and sigmoid networks; connectivity uses
the recurrent policy. Desk scale shrinks width and sample counts and
records each reduction as a deviation.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from apps.experiments.exceptions import ExperimentError
from apps.experiments.services.config import RunResult, TrainConfig
from apps.relnn.exceptions import ModelError

logger = logging.getLogger(__name__)

TABLES = ('substructure', 'relations', 'connectivity_sweep')

# (family, B) rows in table order
SUBSTRUCTURE_MODELS = (
    ('hognn', 1), ('nlm', 2), ('hognn', 2), ('nlm', 3), ('hognn', 3), ('nlm', 4),
)
RELATIONS_MODELS = (('hognn', 1), ('nlm', 2), ('hognn', 2), ('nlm', 3))
SWEEP_MODELS = (('hognn', 2), ('nlm', 3))
AGGREGATORS = ('max', 'sum')

SUBSTRUCTURE_TASKS = ('link3', 'link4', 'triangle', 'clique4')
# task -> (train size, eval sizes)
RELATIONS_TASKS = {
    'grandparent': (20, (20, 80)),
    'uncle': (20, (20, 80)),
    'connectivity4': (10, (10, 80)),
    'connectivity': (10, (10, 80)),
}
RECURRENT_TASKS = ('connectivity',)
WIDE_MODELS_WIDTH = 64
DEPTH = 4
DEFAULT_SEEDS = (0, 1, 2)

DESK_WIDTH = 64
DESK_SPLITS = (400, 100, 300)


@dataclass
class Grid:
    """
    Runs of one table.

    Attributes:
        table: Table id.
        configs: Runnable configs in table order.
        skipped: (family, B, aggregator, task, reason) of cells with no runnable model.
    """
    table: str
    configs: List[TrainConfig] = field(default_factory=list)
    skipped: List[Tuple[str, int, str, str, str]] = field(default_factory=list)


def _width(family: str, max_arity: int, desk: bool) -> Tuple[int, List[str]]:
    width = settings.RELNN['HIDDEN_WIDTH']
    if (family, max_arity) in (('hognn', 3), ('nlm', 4)):
        width = WIDE_MODELS_WIDTH
    if desk and width > DESK_WIDTH:
        return DESK_WIDTH, [f"hidden width {DESK_WIDTH} instead of {width}"]
    return width, []


def _splits(desk: bool) -> Tuple[Tuple[int, int, int], List[str]]:
    splits = tuple(settings.RELNN['SPLIT_SIZES'])
    if desk and splits != DESK_SPLITS:
        return DESK_SPLITS, [f"split sizes {DESK_SPLITS} instead of {splits}"]
    return splits, []


def _cell(
    grid: Grid,
    family: str,
    max_arity: int,
    aggregator: str,
    task: str,
    train_n: int,
    eval_sizes: Sequence[int],
    seeds: Sequence[int],
    desk: bool,
    epochs: Optional[int],
    data_seed: int,
) -> None:
    width, width_deviations = _width(family, max_arity, desk)
    splits, split_deviations = _splits(desk)
    recurrent = task in RECURRENT_TASKS
    options: Dict[str, Any] = {}
    if epochs is not None:
        options['epochs'] = epochs
    try:
        cfg = TrainConfig.for_task(
            task,
            train_n,
            family=family,
            max_arity=max_arity,
            depth=DEPTH,
            width=width,
            aggregator=aggregator,
            depth_policy='recurrent' if recurrent else 'fixed',
            seeds=tuple(seeds),
            splits=splits,
            eval_sizes=tuple(eval_sizes),
            data_seed=data_seed,
            deviations=tuple(width_deviations + split_deviations),
            **options,
        )
    except (ModelError, ExperimentError) as exc:
        grid.skipped.append((family, max_arity, aggregator, task, str(exc)))
        logger.info(f"Skipping {family}-{max_arity} {aggregator} on {task}: {exc}")
        return
    grid.configs.append(cfg)


def reproduce_table(
    table: str,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    desk: bool = True,
    epochs: Optional[int] = None,
    data_seed: int = 0,
) -> Grid:
    """
    The runs behind one table.

    A 1-ary HO-GNN labels pairs through its pair readout. Cells whose config
    cannot be built are reported as skipped.

    Raises:
        ExperimentError: For an unknown table.
    """
    grid = Grid(table=table)
    common = dict(seeds=seeds, desk=desk, epochs=epochs, data_seed=data_seed)
    if table == 'substructure':
        for family, max_arity in SUBSTRUCTURE_MODELS:
            for aggregator in AGGREGATORS:
                for task in SUBSTRUCTURE_TASKS:
                    _cell(grid, family, max_arity, aggregator, task, 10, (10, 30), **common)
    elif table == 'relations':
        for family, max_arity in RELATIONS_MODELS:
            for aggregator in AGGREGATORS:
                for task, (train_n, eval_sizes) in RELATIONS_TASKS.items():
                    _cell(grid, family, max_arity, aggregator, task, train_n, eval_sizes, **common)
    elif table == 'connectivity_sweep':
        sizes = tuple(settings.RELNN['SWEEP_SIZES'])
        for family, max_arity in SWEEP_MODELS:
            for aggregator in AGGREGATORS:
                _cell(grid, family, max_arity, aggregator, 'connectivity4', 10, sizes, **common)
    else:
        raise ExperimentError(f"unknown table '{table}', expected one of {TABLES}")
    logger.info(f"Table {table}: {len(grid.configs)} configs, {len(grid.skipped)} skipped")
    return grid


def batched(items: Sequence[Any], size: int) -> List[Sequence[Any]]:
    size = max(1, size)
    return [items[start:start + size] for start in range(0, len(items), size)]


def dispatch_runs(
    configs: Sequence[TrainConfig],
    output_dir: Optional[str] = None,
    workers: Optional[int] = None,
) -> List[Tuple[TrainConfig, RunResult]]:
    """
    Run every (config, seed) pair as a Celery task.

    At most `workers` (default settings.RELNN_WORKERS) tasks are in flight
    at once. Results are merged by sorted (config hash, seed), so the
    output order does not depend on completion order. Failed runs are
    logged and left out.
    """
    from apps.experiments.tasks import run_experiment_task

    workers = workers or settings.RELNN_WORKERS
    by_hash = {cfg.config_hash(): cfg for cfg in configs}
    jobs = sorted({(cfg.config_hash(), seed) for cfg in configs for seed in cfg.seeds})

    merged: Dict[Tuple[str, int], RunResult] = {}
    for batch in batched(jobs, workers):
        pending = [
            (key, run_experiment_task.delay(by_hash[key[0]].to_dict(), key[1], output_dir))
            for key in batch
        ]
        for key, async_result in pending:
            outcome = async_result.get()
            if outcome.get('status') != 'completed':
                logger.error(f"Run {key[0]}/{key[1]} failed: {outcome.get('error')}")
                continue
            data = {k: v for k, v in outcome.items() if k != 'status'}
            merged[key] = RunResult.from_dict(data)
    return [(by_hash[key[0]], merged[key]) for key in sorted(merged)]


def grid_rows(results: Sequence[Tuple[TrainConfig, RunResult]]) -> List[Dict[str, Any]]:
    rows = []
    for cfg, result in results:
        rows.extend(result.rows(cfg))
    return rows


def model_label(family: str, max_arity: int) -> str:
    return f"{max_arity}-ary {'GNN' if family == 'hognn' else 'NLM'}"


def _columns(table: str) -> List[Tuple[str, int]]:
    if table == 'substructure':
        return [(task, n) for task in SUBSTRUCTURE_TASKS for n in (10, 30)]
    if table == 'relations':
        return [(task, n) for task, (_, sizes) in RELATIONS_TASKS.items() for n in sizes]
    return [('connectivity4', n) for n in settings.RELNN['SWEEP_SIZES']]


def _models(table: str):
    return {
        'substructure': SUBSTRUCTURE_MODELS,
        'relations': RELATIONS_MODELS,
        'connectivity_sweep': SWEEP_MODELS,
    }[table]


def summary_table(
    table: str, results: Sequence[Tuple[TrainConfig, RunResult]]
) -> Tuple[List[str], List[List[str]]]:
    """
    One row per (model, aggregator), one column per (task, eval size), laid
    out like the published table. Cells read "mean±stderr" over seeds,
    "N/A" where no run exists.

    Returns:
        Tuple of (header, rows).
    """
    accuracies: Dict[Tuple[str, int, str, str, int], List[float]] = {}
    for cfg, result in results:
        model = cfg.model
        for eval_n, value in result.accuracies.items():
            key = (model.family, model.max_arity, model.aggregator, cfg.task, eval_n)
            accuracies.setdefault(key, []).append(value)

    columns = _columns(table)
    header = ['Model', 'Agg.'] + [f"{task} n={n}" for task, n in columns]
    rows = []
    for family, max_arity in _models(table):
        for aggregator in AGGREGATORS:
            row = [model_label(family, max_arity), aggregator.capitalize()]
            for task, n in columns:
                values = accuracies.get((family, max_arity, aggregator, task, n))
                row.append(_format_cell(values))
            rows.append(row)
    return header, rows


def _format_cell(values: Optional[List[float]]) -> str:
    if not values:
        return 'N/A'
    values = np.asarray(values, dtype=np.float64)
    stderr = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else 0.0
    return f"{values.mean():.1f}±{stderr:.1f}"
