"""
Experiment services.

This module exports training, evaluation, sweeps, probes, enumerative
training and the reproduction grids.
"""
from .config import METRIC_COLUMNS, EnumTrainConfig, RunResult, TrainConfig
from .enumerative import EnumVerdict, enumerative_train
from .evaluator import accuracy, evaluate
from .metrics import export_metrics_csv
from .probe import ProbeRecord, expressiveness_probe
from .reproduce import TABLES, dispatch_runs, grid_rows, reproduce_table, summary_table
from .runner import run_experiment
from .sweep import SweepPoint, size_generalization_sweep, sweep_rows
from .trainer import train_model

__all__ = [
    'METRIC_COLUMNS',
    'EnumTrainConfig',
    'RunResult',
    'TrainConfig',
    'EnumVerdict',
    'enumerative_train',
    'accuracy',
    'evaluate',
    'export_metrics_csv',
    'ProbeRecord',
    'expressiveness_probe',
    'TABLES',
    'dispatch_runs',
    'grid_rows',
    'reproduce_table',
    'summary_table',
    'run_experiment',
    'SweepPoint',
    'size_generalization_sweep',
    'sweep_rows',
    'train_model',
]
