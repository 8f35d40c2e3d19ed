"""Tests for metrics CSV export and sweeps."""
import csv
import shutil
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from apps.experiments.exceptions import ExperimentError
from apps.experiments.services.config import METRIC_COLUMNS
from apps.experiments.services.evaluator import accuracy
from apps.experiments.services.metrics import export_metrics_csv
from apps.experiments.services.sweep import held_out_samples, size_generalization_sweep, sweep_rows
from apps.experiments.tests.fixtures.configs import tiny_config
from apps.relnn.services.params import init_params


def _row(config_hash, seed, eval_n, value=50.0):
    return {
        'config_hash': config_hash,
        'family': 'nlm',
        'B': 3,
        'D_policy': 'fixed',
        'agg': 'max',
        'task': 'triangle',
        'train_n': 10,
        'eval_n': eval_n,
        'seed': seed,
        'accuracy': value,
        'wallclock_s': 0.25,
    }


class TestExportMetricsCsv(SimpleTestCase):
    """Test export_metrics_csv."""

    def setUp(self):
        self.directory = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.directory)

    def test_columns_and_order(self):
        rows = [
            _row('bbbbbbbbbbbb', 0, 10),
            _row('aaaaaaaaaaaa', 1, 30),
            _row('aaaaaaaaaaaa', 1, 10, 100.0),
            _row('aaaaaaaaaaaa', 0, 10),
        ]

        path = export_metrics_csv(rows, self.directory / 'metrics.csv')

        with path.open(newline='') as handle:
            reader = csv.reader(handle)
            header = next(reader)
            body = list(reader)
        self.assertEqual(tuple(header), METRIC_COLUMNS)
        self.assertEqual(
            [(line[0], line[8], line[7]) for line in body],
            [
                ('aaaaaaaaaaaa', '0', '10'),
                ('aaaaaaaaaaaa', '1', '10'),
                ('aaaaaaaaaaaa', '1', '30'),
                ('bbbbbbbbbbbb', '0', '10'),
            ],
        )
        self.assertEqual(body[1][9], '100.0')
        self.assertEqual(body[1][10], '0.250')

    def test_arrival_order_does_not_matter(self):
        rows = [_row('a' * 12, seed, n) for seed in (2, 0, 1) for n in (30, 10)]

        first = export_metrics_csv(rows, self.directory / 'first.csv').read_bytes()
        second = export_metrics_csv(rows[::-1], self.directory / 'second.csv').read_bytes()

        self.assertEqual(first, second)

    def test_missing_column(self):
        row = _row('a' * 12, 0, 10)
        del row['agg']

        with self.assertRaises(ExperimentError):
            export_metrics_csv([row], self.directory / 'metrics.csv')


class TestSizeGeneralizationSweep(SimpleTestCase):
    """Test size_generalization_sweep."""

    def setUp(self):
        self.params = init_params(tiny_config().model, 0)

    def test_one_point_per_size(self):
        points = size_generalization_sweep(self.params, 'triangle', sizes=(6, 10, 8), count=4)

        self.assertEqual([point.eval_n for point in points], [6, 8, 10])

    def test_matches_evaluate_on_same_samples(self):
        samples = held_out_samples('triangle', 8, 4, seed=3)

        points = size_generalization_sweep(self.params, 'triangle', sizes=(8,), seed=3, count=4)

        self.assertEqual(points[0].accuracy, accuracy(self.params, samples))

    def test_rows(self):
        points = size_generalization_sweep(self.params, 'triangle', sizes=(8,), count=2)

        rows = sweep_rows(points, self.params, 'triangle', train_n=None, seed=0)

        self.assertEqual(tuple(rows[0]), METRIC_COLUMNS)
        self.assertEqual(rows[0]['train_n'], '')
        self.assertEqual(rows[0]['config_hash'], self.params.config.config_hash())
