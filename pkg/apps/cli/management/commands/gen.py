"""
Generate a seeded dataset: train/val/test JSON lines plus a manifest.
"""
from pathlib import Path

from django.conf import settings

from apps.cli.services.command import LabCommand
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option, boolean, int_list, optional_str
from apps.datasets.services import TASKS, TIERS, DatasetSpec, build_dataset, write_dataset


class Command(LabCommand):
    help = 'Generate a dataset for one task and graph size'

    lab_options = {
        'task': Option(required=True, choices=tuple(TASKS), help='Task id.'),
        'n': Option(required=True, parse=int, help='Nodes per graph.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'splits': Option(
            default=tuple(settings.RELNN['SPLIT_SIZES']), parse=int_list,
            help='Train,val,test sample counts.',
        ),
        'tier': Option(parse=optional_str, choices=TIERS, help='Edge tier; drawn per sample when unset.'),
        'duplicate': Option(default=True, parse=boolean, help='Allow component duplication (true/false).'),
    }

    def run(self, config):
        spec = DatasetSpec(
            task=config['task'],
            n=config['n'],
            splits=config['splits'],
            seed=config.seed,
            tier=config['tier'],
            duplicate=config['duplicate'],
        )
        directory = write_dataset(config['out'], build_dataset(spec), spec)
        write_manifest(directory, config)
        self.success(
            f"Wrote {spec.task} n={spec.n} splits {list(spec.splits)} to {directory}"
        )
