"""
Enumerative training of a quantized NLM.
"""
from pathlib import Path

from apps.cli.services.command import LabCommand
from apps.cli.services.files import write_json
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option, int_list
from apps.experiments.services import EnumTrainConfig, enumerative_train

DEFAULTS = EnumTrainConfig()


class Command(LabCommand):
    help = 'Train on every graph up to a size and test on all larger ones'

    lab_options = {
        'task': Option(default=DEFAULTS.task, help='Graph-level task id.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'max_train_n': Option(default=DEFAULTS.max_train_n, parse=int, help='Train on all graphs of 1..N nodes.'),
        'test_n': Option(default=DEFAULTS.test_n, parse=int, help='Size tested exhaustively.'),
        'sampled_sizes': Option(default=DEFAULTS.sampled_sizes, parse=int_list, help='Sizes tested on random graphs.'),
        'sampled_count': Option(default=DEFAULTS.sampled_count, parse=int, help='Random graphs per sampled size.'),
        'bits': Option(default=DEFAULTS.quant_bits, parse=int, help='Activation quantization bits.'),
        'depth': Option(default=DEFAULTS.depth, parse=int, help='Layers.'),
        'width': Option(default=DEFAULTS.width, parse=int, help='Hidden width.'),
        'arity': Option(default=DEFAULTS.max_arity, parse=int, help='Max arity B.'),
        'epochs': Option(default=DEFAULTS.epochs, parse=int, help='Epoch budget for the fit.'),
        'lr': Option(default=DEFAULTS.lr, parse=float, help='Adam learning rate.'),
    }

    def run(self, config):
        cfg = EnumTrainConfig(
            task=config['task'],
            max_train_n=config['max_train_n'],
            test_n=config['test_n'],
            sampled_sizes=config['sampled_sizes'],
            sampled_count=config['sampled_count'],
            quant_bits=config['bits'],
            depth=config['depth'],
            width=config['width'],
            max_arity=config['arity'],
            epochs=config['epochs'],
            lr=config['lr'],
            seed=config.seed,
        )
        verdict = enumerative_train(cfg)
        out = config['out']
        write_json(out / 'verdict.json', verdict.to_dict())
        write_manifest(out, config, extra={'enum_config': cfg.to_dict()})
        self.stdout.write(
            f"{cfg.task} N={cfg.max_train_n} {cfg.quant_bits}-bit: {verdict.verdict} "
            f"(training errors {verdict.training_errors}/{verdict.training_count}, "
            f"n={cfg.test_n} errors {verdict.exhaustive_error_count})"
        )
