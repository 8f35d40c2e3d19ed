"""
Expressiveness probe on a counterexample pair.
"""
from pathlib import Path

from apps.cli.services.command import LabCommand
from apps.cli.services.files import write_json
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option
from apps.experiments.services import expressiveness_probe
from apps.experiments.services.probe import CONSTRUCTIONS
from apps.relnn.services import ModelConfig, load_model
from apps.relnn.services.config import AGGREGATORS, FAMILIES


class Command(LabCommand):
    help = 'Check whether models give the two graphs of a construction identical readouts'

    lab_options = {
        'construction': Option(default='chain', choices=CONSTRUCTIONS, help='chain or regular_pair.'),
        'klen': Option(default=12, parse=int, help='Chain length k.'),
        'depth': Option(default=5, parse=int, help='Layers run on both graphs.'),
        'trials': Option(default=50, parse=int, help='Random initializations to compare.'),
        'family': Option(default='nlm', choices=FAMILIES, help='nlm or hognn.'),
        'arity': Option(default=2, parse=int, help='Max arity B.'),
        'width': Option(default=8, parse=int, help='Hidden width.'),
        'agg': Option(default='max', choices=AGGREGATORS, help='sum, max or fpmean.'),
        'model': Option(parse=Path, help='Probe these trained weights instead of random ones.'),
        'out': Option(parse=Path, help='Directory for probe.json and the manifest.'),
    }

    def run(self, config):
        params = load_model(config['model']) if config['model'] is not None else None
        cfg = params.config if params is not None else ModelConfig(
            family=config['family'],
            max_arity=config['arity'],
            depth=config['depth'],
            width=config['width'],
            aggregator=config['agg'],
        )
        record = expressiveness_probe(
            config['construction'],
            cfg,
            config['depth'],
            trials=config['trials'],
            k_len=config['klen'],
            seed=config.seed,
            params=params,
        )
        self.stdout.write(
            f"{record.construction} {record.family}-{record.max_arity} {record.aggregator} "
            f"depth {record.depth}: {record.violation_count} violations in {record.trials} trials"
            f" (expected blind: {'yes' if record.expected_blind else 'no'})"
        )
        if config['out'] is not None:
            write_json(config['out'] / 'probe.json', record.to_dict())
            write_manifest(config['out'], config)
