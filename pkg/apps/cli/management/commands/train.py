"""
Train one configuration for one or more seeds and record the runs.
"""
from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError

from apps.cli.services.command import USAGE_ERROR, LabCommand
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option, int_list, optional_str
from apps.datasets.services import SPLITS, TASKS, TIERS, read_spec, read_split
from apps.experiments.services import TrainConfig, export_metrics_csv, run_experiment
from apps.experiments.services.runner import model_path, result_rows
from apps.relnn.services.config import AGGREGATORS, DEPTH_POLICIES, FAMILIES


class Command(LabCommand):
    help = 'Train a model on a generated or stored dataset and evaluate it'
    uses_database = True

    lab_options = {
        'task': Option(choices=tuple(TASKS), help='Task id; taken from --data when given.'),
        'n': Option(parse=int, help='Training graph size; taken from --data when given.'),
        'data': Option(parse=Path, help='Dataset directory written by gen.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'family': Option(default='nlm', choices=FAMILIES, help='nlm or hognn.'),
        'arity': Option(default=3, parse=int, help='Max arity B.'),
        'depth': Option(default=4, parse=int, help='Layers D.'),
        'width': Option(default=settings.RELNN['HIDDEN_WIDTH'], parse=int, help='Hidden width.'),
        'agg': Option(default='max', choices=AGGREGATORS, help='sum, max or fpmean.'),
        'depth_policy': Option(default='fixed', choices=DEPTH_POLICIES, help='fixed or recurrent.'),
        'epochs': Option(default=settings.RELNN['EPOCHS'], parse=int, help='Training epochs.'),
        'lr': Option(default=settings.RELNN['LEARNING_RATE'], parse=float, help='Adam learning rate.'),
        'accumulate': Option(default=settings.RELNN['ACCUMULATE'], parse=int, help='Graphs per Adam step.'),
        'splits': Option(
            default=tuple(settings.RELNN['SPLIT_SIZES']), parse=int_list,
            help='Train,val,test sample counts for generated data.',
        ),
        'eval_sizes': Option(default=(), parse=int_list, help='Sizes to test at; default the training size.'),
        'tier': Option(parse=optional_str, choices=TIERS, help='Edge tier of generated graphs.'),
        'runs': Option(default=1, parse=int, help='Seeds to train: seed, seed+1, ...'),
    }

    def run(self, config):
        data = None
        task, n, splits, data_seed = config['task'], config['n'], config['splits'], config.seed
        if config['data'] is not None:
            spec = read_spec(config['data'])
            task, n, splits, data_seed = spec.task, spec.n, spec.splits, spec.seed
            data = {split: read_split(config['data'], split) for split in SPLITS}
        if task is None or n is None:
            raise CommandError("--task and --n are required without --data", returncode=USAGE_ERROR)

        cfg = TrainConfig.for_task(
            task,
            n,
            family=config['family'],
            max_arity=config['arity'],
            depth=config['depth'],
            width=config['width'],
            aggregator=config['agg'],
            depth_policy=config['depth_policy'],
            seeds=tuple(config.seed + i for i in range(max(1, config['runs']))),
            epochs=config['epochs'],
            lr=config['lr'],
            accumulate=config['accumulate'],
            splits=splits,
            eval_sizes=config['eval_sizes'],
            data_seed=data_seed,
            tier=config['tier'],
        )
        out = config['out']
        results = [run_experiment(cfg, seed, output_dir=out, data=data) for seed in cfg.seeds]
        export_metrics_csv(result_rows(cfg, results), out / 'metrics.csv')
        write_manifest(out, config, extra={
            'config_hash': cfg.config_hash(),
            'train_config': cfg.to_dict(),
            'models': [
                str(model_path('', cfg.config_hash(), result.seed)) for result in results
            ],
        })
        for result in results:
            accuracies = ', '.join(f"n={size}: {acc:.1f}" for size, acc in sorted(result.accuracies.items()))
            self.stdout.write(f"seed {result.seed}: {accuracies}")
        self.success(f"Trained {len(results)} run(s) of {cfg.config_hash()} into {out}")
