"""
Run the grid behind one accuracy table and write it in table layout.
"""
from pathlib import Path

from apps.cli.services.command import LabCommand
from apps.cli.services.files import write_table_csv
from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import Option
from apps.experiments.services import (
    TABLES,
    dispatch_runs,
    export_metrics_csv,
    grid_rows,
    reproduce_table,
    summary_table,
)
from apps.experiments.services.reproduce import DEFAULT_SEEDS


class Command(LabCommand):
    help = 'Reproduce the substructure or relations table, or the connectivity size sweep'
    uses_database = True

    lab_options = {
        'table': Option(required=True, choices=TABLES, help='Table id.'),
        'out': Option(required=True, parse=Path, help='Output directory.'),
        'runs': Option(default=len(DEFAULT_SEEDS), parse=int, help='Seeds per cell: seed, seed+1, ...'),
        'epochs': Option(parse=int, help='Override the training epochs.'),
        'full': Option(switch=True, default=False, help='Reference width and split sizes instead of desk scale.'),
        'workers': Option(parse=int, help='Runs in flight at once; default RELNN_WORKERS.'),
    }

    def run(self, config):
        grid = reproduce_table(
            config['table'],
            seeds=tuple(config.seed + i for i in range(max(1, config['runs']))),
            desk=not config['full'],
            epochs=config['epochs'],
            data_seed=config.seed,
        )
        out = config['out']
        results = dispatch_runs(grid.configs, output_dir=str(out), workers=config['workers'])
        export_metrics_csv(grid_rows(results), out / 'metrics.csv')
        header, rows = summary_table(config['table'], results)
        write_table_csv(out / 'table.csv', header, rows)

        expected = sum(len(cfg.seeds) for cfg in grid.configs)
        deviations = sorted({deviation for cfg in grid.configs for deviation in cfg.deviations})
        write_manifest(out, config, extra={
            'deviations': deviations,
            'skipped': [list(cell) for cell in grid.skipped],
            'runs_completed': len(results),
            'runs_expected': expected,
        })
        for deviation in deviations:
            self.stderr.write(f"deviation: {deviation}")
        if len(results) < expected:
            self.stderr.write(f"{expected - len(results)} of {expected} runs failed; their cells read N/A")
        self.success(f"Wrote {config['table']} table ({len(results)} runs) to {out}")
