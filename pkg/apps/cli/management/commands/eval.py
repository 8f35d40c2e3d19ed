"""
Evaluate a saved model on a stored test split or freshly generated graphs.
"""
from pathlib import Path

from django.core.management.base import CommandError

from apps.cli.services.command import USAGE_ERROR, LabCommand
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option, int_list, optional_str
from apps.datasets.services import TASKS, TIERS, read_spec, read_split
from apps.experiments.services import SweepPoint, evaluate, export_metrics_csv, sweep_rows
from apps.experiments.services.sweep import DEFAULT_TEST_COUNT, held_out_samples
from apps.relnn.services import load_model


class Command(LabCommand):
    help = 'Evaluate a saved model'

    lab_options = {
        'model': Option(required=True, parse=Path, help='Model JSON written by train.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'data': Option(parse=Path, help='Dataset directory; its test split is scored.'),
        'task': Option(choices=tuple(TASKS), help='Task id for generated test graphs.'),
        'sizes': Option(default=(), parse=int_list, help='Graph sizes for generated test graphs.'),
        'count': Option(default=DEFAULT_TEST_COUNT, parse=int, help='Test graphs per size.'),
        'tier': Option(parse=optional_str, choices=TIERS, help='Edge tier of generated graphs.'),
    }

    def run(self, config):
        params = load_model(config['model'])
        if config['data'] is not None:
            spec = read_spec(config['data'])
            task = spec.task
            data = {spec.n: read_split(config['data'], 'test')}
        else:
            task = config['task']
            if task is None or not config['sizes']:
                raise CommandError("--task and --sizes are required without --data", returncode=USAGE_ERROR)
            data = {
                n: held_out_samples(task, n, config['count'], config.seed, config['tier'])
                for n in config['sizes']
            }

        accuracies, seconds = evaluate(params, data)
        points = [SweepPoint(n, accuracies[n], seconds[n]) for n in sorted(accuracies)]
        out = config['out']
        export_metrics_csv(sweep_rows(points, params, task, None, config.seed), out / 'metrics.csv')
        write_manifest(out, config, extra={'model_config_hash': params.config.config_hash()})
        for point in points:
            self.stdout.write(f"{task} n={point.eval_n}: {point.accuracy:.1f}")
        self.success(f"Evaluated {config['model']} into {out}")
