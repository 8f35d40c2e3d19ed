"""Tests for the reproduction grids and batched dispatch."""
from unittest import skipUnless
from unittest.mock import MagicMock, patch

from django.conf import settings
from django.test import SimpleTestCase, TestCase

from apps.experiments.exceptions import ExperimentError
from apps.experiments.services.config import RunResult, TrainConfig
from apps.experiments.services.reproduce import (
    batched,
    dispatch_runs,
    grid_rows,
    reproduce_table,
    summary_table,
)
from apps.experiments.tests.fixtures.configs import tiny_config

DELAY = 'apps.experiments.tasks.run_experiment_task.delay'


def _fake_delay(calls):
    def delay(config_data, seed, output_dir=None):
        calls.append(seed)
        config_hash = TrainConfig.from_dict(config_data).config_hash()
        async_result = MagicMock()
        async_result.get.return_value = {
            'status': 'completed',
            'config_hash': config_hash,
            'seed': seed,
            'accuracies': {'8': 50.0 + seed},
            'eval_wallclock_s': {'8': 0.1},
        }
        return async_result
    return delay


class TestReproduceTable(SimpleTestCase):
    """Test grid definitions."""

    def test_substructure_grid(self):
        grid = reproduce_table('substructure')

        self.assertEqual(len(grid.configs), 6 * 2 * 4)
        self.assertEqual(grid.skipped, [])
        for cfg in grid.configs:
            self.assertEqual(cfg.train_n, 10)
            self.assertEqual(cfg.eval_sizes, (10, 30))
            self.assertEqual(cfg.seeds, (0, 1, 2))
            self.assertEqual(cfg.model.depth, 4)
            self.assertEqual(cfg.splits, (400, 100, 300))

    def test_relations_grid_reads_pairs_from_unary_models(self):
        grid = reproduce_table('relations')

        self.assertEqual(len(grid.configs), 4 * 2 * 4)
        self.assertEqual(grid.skipped, [])
        unary = [cfg for cfg in grid.configs if cfg.model.max_arity == 1]
        self.assertEqual(len(unary), 2 * 4)
        self.assertTrue(all(cfg.model.pair_readout for cfg in unary))
        recurrent = [cfg for cfg in grid.configs if cfg.task == 'connectivity']
        self.assertTrue(recurrent)
        for cfg in recurrent:
            self.assertEqual(cfg.model.depth_policy, 'recurrent')
            self.assertTrue(cfg.model.weight_sharing)
        family = [cfg for cfg in grid.configs if cfg.task == 'uncle']
        self.assertTrue(all(cfg.train_n == 20 and cfg.eval_sizes == (20, 80) for cfg in family))

    def test_connectivity_sweep_sizes(self):
        grid = reproduce_table('connectivity_sweep')

        self.assertEqual(len(grid.configs), 4)
        self.assertEqual(grid.configs[0].eval_sizes, (10, 20, 30, 40, 50, 60, 70, 80))

    def test_desk_scale_records_deviations(self):
        desk = {(c.model.family, c.model.max_arity): c for c in reproduce_table('substructure').configs}
        full = {
            (c.model.family, c.model.max_arity): c
            for c in reproduce_table('substructure', desk=False).configs
        }

        self.assertEqual(desk[('nlm', 3)].model.width, 64)
        self.assertEqual(len(desk[('nlm', 3)].deviations), 2)
        self.assertEqual(desk[('nlm', 4)].model.width, 64)
        self.assertEqual(len(desk[('nlm', 4)].deviations), 1)
        self.assertEqual(full[('nlm', 3)].model.width, 128)
        self.assertEqual(full[('nlm', 4)].model.width, 64)
        self.assertEqual(full[('nlm', 3)].deviations, ())
        self.assertEqual(full[('nlm', 3)].splits, (800, 100, 300))

    def test_epochs_override(self):
        grid = reproduce_table('connectivity_sweep', epochs=5, seeds=(7,))

        self.assertTrue(all(cfg.epochs == 5 and cfg.seeds == (7,) for cfg in grid.configs))

    def test_unknown_table(self):
        with self.assertRaises(ExperimentError):
            reproduce_table('figure3')


class TestDispatchRuns(SimpleTestCase):
    """Test batched dispatch with the task stubbed."""

    def setUp(self):
        self.configs = [tiny_config(seeds=(2, 0, 1)), tiny_config(epochs=3, seeds=(0,))]

    def test_batches(self):
        self.assertEqual(batched([1, 2, 3, 4, 5], 2), [[1, 2], [3, 4], [5]])
        self.assertEqual(batched([1, 2], 0), [[1], [2]])

    def test_merge_is_sorted_and_order_independent(self):
        calls = []
        with patch(DELAY, side_effect=_fake_delay(calls)):
            forward = dispatch_runs(self.configs, workers=2)
            backward = dispatch_runs(self.configs[::-1], workers=3)

        self.assertEqual(len(calls), 8)
        keys = [result.key for _, result in forward]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(keys, [result.key for _, result in backward])
        self.assertEqual(grid_rows(forward), grid_rows(backward))

    def test_failed_runs_are_left_out(self):
        def delay(config_data, seed, output_dir=None):
            async_result = MagicMock()
            async_result.get.return_value = {'status': 'failed', 'error': 'diverged', 'seed': seed}
            return async_result

        with patch(DELAY, side_effect=delay):
            self.assertEqual(dispatch_runs(self.configs), [])


class TestSummaryTable(SimpleTestCase):
    """Test the table-shaped summary."""

    def test_mean_and_stderr(self):
        cfg = tiny_config('triangle', family='nlm', max_arity=3, train_n=10)
        results = [
            (cfg, RunResult(config_hash='x', seed=seed, accuracies={10: value}))
            for seed, value in enumerate((90.0, 100.0, 95.0))
        ]

        header, rows = summary_table('substructure', results)

        self.assertEqual(header[:4], ['Model', 'Agg.', 'link3 n=10', 'link3 n=30'])
        self.assertEqual(len(rows), 12)
        row = next(r for r in rows if r[0] == '3-ary NLM' and r[1] == 'Max')
        triangle = header.index('triangle n=10')
        self.assertEqual(row[triangle], '95.0±2.9')
        self.assertEqual(row[triangle + 1], 'N/A')


@skipUnless(settings.RELNN_RUN_SLOW_TESTS, "desk-scale table cells take CPU minutes")
class TestDeskScaleReproduction(TestCase):
    """Desk-scale cells of the published tables."""

    def cell(self, table, family, max_arity, aggregator, task):
        grid = reproduce_table(table)
        configs = [
            cfg for cfg in grid.configs
            if (cfg.model.family, cfg.model.max_arity, cfg.model.aggregator, cfg.task)
            == (family, max_arity, aggregator, task)
        ]
        results = dispatch_runs(configs)
        by_size = {}
        for _, result in results:
            for size, value in result.accuracies.items():
                by_size.setdefault(size, []).append(value)
        return {size: sum(values) / len(values) for size, values in by_size.items()}

    def test_triangle_needs_three_ary_models(self):
        for family, max_arity in (('nlm', 3), ('hognn', 2)):
            solved = self.cell('substructure', family, max_arity, 'max', 'triangle')
            with self.subTest(family=family, max_arity=max_arity):
                self.assertGreaterEqual(solved[10], 95.0)
                self.assertGreaterEqual(solved[30], 95.0)
        for family, max_arity in (('nlm', 2), ('hognn', 1)):
            blind = self.cell('substructure', family, max_arity, 'max', 'triangle')
            with self.subTest(family=family, max_arity=max_arity):
                self.assertLessEqual(blind[30], 65.0)

    def test_four_clique_needs_four_ary_models(self):
        three_ary = [
            self.cell('substructure', family, max_arity, 'max', 'clique4')[10]
            for family, max_arity in (('nlm', 3), ('hognn', 2))
        ]
        four_ary = [
            self.cell('substructure', family, max_arity, 'max', 'clique4')[10]
            for family, max_arity in (('nlm', 4), ('hognn', 3))
        ]

        self.assertLessEqual(max(three_ary), 70.0)
        self.assertGreaterEqual(min(four_ary), max(three_ary) + 10.0)

    def test_connectivity4_max_generalizes(self):
        accuracies = self.cell('relations', 'nlm', 3, 'max', 'connectivity4')

        self.assertGreaterEqual(accuracies[80], 95.0)

    def test_connectivity4_sum_degrades_with_size(self):
        accuracies = self.cell('relations', 'nlm', 3, 'sum', 'connectivity4')

        self.assertGreaterEqual(accuracies[10] - accuracies[80], 20.0)

    def test_grandparent_needs_max_aggregation(self):
        solved = self.cell('relations', 'hognn', 2, 'max', 'grandparent')
        summed = self.cell('relations', 'hognn', 2, 'sum', 'grandparent')

        self.assertGreaterEqual(solved[80], 95.0)
        self.assertLessEqual(summed[80], 60.0)
