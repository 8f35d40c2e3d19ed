"""
Size-generalization sweep of a saved model.
"""
from pathlib import Path

from django.conf import settings

from apps.cli.services.command import LabCommand
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option, int_list, optional_str
from apps.datasets.services import TASKS, TIERS
from apps.experiments.services import export_metrics_csv, size_generalization_sweep, sweep_rows
from apps.experiments.services.sweep import DEFAULT_TEST_COUNT
from apps.relnn.services import load_model


class Command(LabCommand):
    help = 'Test a saved model on growing graph sizes'

    lab_options = {
        'model': Option(required=True, parse=Path, help='Model JSON written by train.'),
        'task': Option(required=True, choices=tuple(TASKS), help='Task the model was trained on.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'sizes': Option(
            default=tuple(settings.RELNN['SWEEP_SIZES']), parse=int_list, help='Graph sizes.'
        ),
        'count': Option(default=DEFAULT_TEST_COUNT, parse=int, help='Test graphs per size.'),
        'train_n': Option(parse=int, help='Training size, echoed in the CSV.'),
        'tier': Option(parse=optional_str, choices=TIERS, help='Edge tier of generated graphs.'),
    }

    def run(self, config):
        params = load_model(config['model'])
        points = size_generalization_sweep(
            params,
            config['task'],
            sizes=config['sizes'],
            seed=config.seed,
            count=config['count'],
            tier=config['tier'],
        )
        out = config['out']
        rows = sweep_rows(points, params, config['task'], config['train_n'], config.seed)
        export_metrics_csv(rows, out / 'sweep.csv')
        write_manifest(out, config, extra={'model_config_hash': params.config.config_hash()})
        for point in points:
            self.stdout.write(f"n={point.eval_n}: {point.accuracy:.1f}")
        self.success(f"Swept {len(points)} sizes into {out / 'sweep.csv'}")
