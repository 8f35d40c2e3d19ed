"""
k-WL distinguishability certificate for two graph files.
"""
from pathlib import Path

from apps.cli.services.command import LabCommand
from apps.cli.services.files import read_graph, write_text
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option
from apps.oracles.services import format_certificate, wl_certificate


class Command(LabCommand):
    help = 'Decide whether k-WL tells two graphs apart'

    lab_options = {
        'k': Option(required=True, parse=int, help='Tuple size (1 is color refinement).'),
        'a': Option(required=True, parse=Path, help='First graph JSON.'),
        'b': Option(required=True, parse=Path, help='Second graph JSON.'),
        'rounds': Option(default=100, parse=int, help='Refinement round cap.'),
        'out': Option(parse=Path, help='Directory for certificate.txt and the manifest.'),
    }

    def run(self, config):
        certificate = wl_certificate(
            read_graph(config['a']), read_graph(config['b']), config['k'], config['rounds']
        )
        text = format_certificate(certificate)
        self.stdout.write(text)
        if config['out'] is not None:
            write_text(config['out'] / 'certificate.txt', text)
            write_manifest(config['out'], config, extra={
                'distinguishable': certificate.distinguishable,
                'first_round': certificate.first_round,
            })
