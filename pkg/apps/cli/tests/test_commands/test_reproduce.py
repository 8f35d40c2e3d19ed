"""Tests for the enumtrain and reproduce commands."""
import csv
import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.test import SimpleTestCase

from apps.cli.services.dispatch import dispatch
from apps.experiments.services.config import RunResult
from apps.experiments.services.enumerative import COUNTEREXAMPLE, GENERALIZED, PREMISE_UNMET

MIGRATE = 'apps.cli.services.command.call_command'
DISPATCH_RUNS = 'apps.cli.management.commands.reproduce.dispatch_runs'


def first_run_only(configs, output_dir=None, workers=None):
    cfg = configs[0]
    return [(cfg, RunResult(config_hash=cfg.config_hash(), seed=0, accuracies={10: 100.0, 30: 90.0}))]


class TestEnumtrainCommand(SimpleTestCase):
    """Test enumerative training from the command line."""

    def setUp(self):
        self.directory = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.directory)

    def test_writes_verdict(self):
        out = self.directory / 'enum'
        code = dispatch(
            ['enumtrain', '--max-train-n', '2', '--test-n', '3', '--sampled-sizes', '4',
             '--sampled-count', '10', '--epochs', '20', '--out', str(out)],
            stdout=StringIO(), stderr=StringIO(),
        )

        self.assertEqual(code, 0)
        verdict = json.loads((out / 'verdict.json').read_text())
        self.assertIn(verdict['verdict'], (GENERALIZED, COUNTEREXAMPLE, PREMISE_UNMET))
        self.assertEqual(verdict['training_count'], 3)
        manifest = json.loads((out / 'manifest.json').read_text())
        self.assertEqual(manifest['enum_config']['sampled_sizes'], [4])

    def test_invalid_sizes_fail(self):
        code = dispatch(
            ['enumtrain', '--max-train-n', '4', '--test-n', '4', '--out', str(self.directory)],
            stdout=StringIO(), stderr=StringIO(),
        )

        self.assertEqual(code, 2)


@patch(MIGRATE)
class TestReproduceCommand(SimpleTestCase):
    """Test table reproduction with the runs stubbed."""

    def setUp(self):
        self.directory = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.directory)
        self.out = self.directory / 'table'

    def reproduce(self, *extra):
        stderr = StringIO()
        code = dispatch(
            ['reproduce', '--table', 'substructure', '--out', str(self.out), *extra],
            stdout=StringIO(), stderr=stderr,
        )
        return code, stderr.getvalue()

    def test_writes_table_in_published_layout(self, migrate):
        with patch(DISPATCH_RUNS, side_effect=first_run_only) as runs:
            code, stderr = self.reproduce('--runs', '2', '--workers', '4')

        self.assertEqual(code, 0)
        configs = runs.call_args.args[0]
        self.assertEqual(len(configs), 48)
        self.assertTrue(all(cfg.seeds == (0, 1) for cfg in configs))
        self.assertEqual(runs.call_args.kwargs['workers'], 4)

        with open(self.out / 'table.csv', newline='', encoding='utf-8') as handle:
            table = list(csv.reader(handle))
        self.assertEqual(table[0][:4], ['Model', 'Agg.', 'link3 n=10', 'link3 n=30'])
        self.assertEqual(table[1][:4], ['1-ary GNN', 'Max', '100.0±0.0', '90.0±0.0'])
        self.assertEqual(table[2][2], 'N/A')
        self.assertEqual(len(table), 13)

        manifest = json.loads((self.out / 'manifest.json').read_text())
        self.assertEqual(manifest['runs_completed'], 1)
        self.assertEqual(manifest['runs_expected'], 96)
        self.assertTrue(manifest['deviations'])
        self.assertIn('95 of 96 runs failed', stderr)

    def test_full_scale_has_no_deviations(self, migrate):
        with patch(DISPATCH_RUNS, side_effect=first_run_only):
            code, _ = self.reproduce('--full', '--epochs', '1')

        self.assertEqual(code, 0)
        manifest = json.loads((self.out / 'manifest.json').read_text())
        self.assertEqual(manifest['deviations'], [])
        self.assertTrue(manifest['command']['options']['full'])

    def test_unknown_table(self, migrate):
        code = dispatch(
            ['reproduce', '--table', 'figure3', '--out', str(self.out)],
            stdout=StringIO(), stderr=StringIO(),
        )

        self.assertEqual(code, 1)
