"""Tests for train_model and the optimization loop."""
from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase

from apps.datasets.services.seeds import derive_seed
from apps.experiments.exceptions import DivergenceError, ExperimentError
from apps.experiments.services.evaluator import accuracy
from apps.experiments.services.trainer import optimize, train_model
from apps.experiments.tests.fixtures.configs import tiny_config, tiny_data
from apps.relnn.services.params import init_params
from apps.tensor_core.exceptions import NonFiniteError
from apps.tensor_core.services.adam import adam_step, effective_learning_rate


def _same_weights(first, second):
    a, b = first.named_arrays(), second.named_arrays()
    return a.keys() == b.keys() and all(np.array_equal(a[k], b[k]) for k in a)


class TestTrainModel(SimpleTestCase):
    """Test train_model."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cfg = tiny_config(epochs=3)
        cls.data = tiny_data(cls.cfg)

    def test_zero_epochs_returns_initial_weights(self):
        cfg = tiny_config(epochs=0)

        params, result = train_model(cfg, self.data, seed=5)

        self.assertTrue(_same_weights(params, init_params(cfg.model, derive_seed(5, 'init'))))
        self.assertEqual(result.train_curve, [])
        self.assertEqual(len(result.val_curve), 1)
        self.assertEqual(result.best_epoch, 0)
        self.assertEqual(result.accuracies, {})

    def test_deterministic_per_seed(self):
        first_params, first = train_model(self.cfg, self.data, seed=1)
        second_params, second = train_model(self.cfg, self.data, seed=1)

        self.assertTrue(_same_weights(first_params, second_params))
        self.assertEqual(first.train_curve, second.train_curve)
        self.assertEqual(first.val_curve, second.val_curve)
        self.assertEqual(first.best_epoch, second.best_epoch)

    def test_seeds_differ(self):
        first_params, _ = train_model(self.cfg, self.data, seed=1)
        second_params, _ = train_model(self.cfg, self.data, seed=2)

        self.assertFalse(_same_weights(first_params, second_params))

    def test_checkpoint_dominates_logged_epochs(self):
        params, result = train_model(self.cfg, self.data, seed=0)

        self.assertEqual(len(result.train_curve), 3)
        self.assertEqual(len(result.val_curve), 4)
        best = result.val_curve[result.best_epoch]
        self.assertEqual(best, max(result.val_curve))
        self.assertEqual(accuracy(params, self.data['val']), best)
        self.assertEqual(result.config_hash, self.cfg.config_hash())

    def test_recurrent_model_trains(self):
        cfg = tiny_config('connectivity4', depth_policy='recurrent', epochs=1, splits=(4, 2, 2))

        params, result = train_model(cfg, tiny_data(cfg), seed=0)

        self.assertEqual(len(result.train_curve), 1)
        self.assertTrue(np.isfinite(result.train_curve[0]))

    def test_non_finite_loss_names_epoch(self):
        with patch(
            'apps.experiments.services.trainer.loss_and_grads',
            return_value=(float('nan'), {}, None),
        ):
            with self.assertRaises(DivergenceError) as ctx:
                train_model(self.cfg, self.data, seed=0)

        self.assertEqual(ctx.exception.epoch, 1)

    def test_non_finite_gradient(self):
        with patch(
            'apps.experiments.services.trainer.adam_step',
            side_effect=NonFiniteError('layer1.arity0.w0'),
        ):
            with self.assertRaises(DivergenceError) as ctx:
                train_model(self.cfg, self.data, seed=0)

        self.assertEqual(ctx.exception.epoch, 1)
        self.assertIn('layer1.arity0.w0', str(ctx.exception))

    def test_unary_gnn_trains_on_pair_labels(self):
        cfg = tiny_config('grandparent', family='hognn', max_arity=1, epochs=1, splits=(4, 2, 2))

        params, result = train_model(cfg, tiny_data(cfg), seed=0)

        self.assertTrue(params.config.pair_readout)
        self.assertEqual(len(result.train_curve), 1)
        self.assertTrue(np.isfinite(result.train_curve[0]))

    def test_sample_arity_must_match(self):
        connectivity = tiny_data(tiny_config('connectivity4', splits=(2, 0, 0)))

        with self.assertRaises(ExperimentError):
            train_model(self.cfg, connectivity, seed=0)


class TestOptimize(SimpleTestCase):
    """Test the optimization loop directly."""

    def test_empty_training_split(self):
        cfg = tiny_config()

        with self.assertRaises(ExperimentError):
            optimize(cfg.model, [], [], seed=0, epochs=1, lr=1e-2)

    def test_stop_when_ends_early(self):
        cfg = tiny_config()
        data = tiny_data(cfg)
        epochs = []

        outcome = optimize(
            cfg.model,
            data['train'],
            [],
            seed=0,
            epochs=10,
            lr=1e-2,
            on_epoch=lambda epoch, loss, val: epochs.append(epoch),
            stop_when=lambda params: True,
        )

        self.assertEqual(epochs, [1])
        self.assertEqual(outcome.best_epoch, 1)
        self.assertEqual(outcome.val_curve, [])

    def test_learning_rate_decays_at_one_based_epochs(self):
        cfg = tiny_config()
        data = tiny_data(cfg)

        with patch('apps.experiments.services.trainer.adam_step', wraps=adam_step) as step:
            optimize(
                cfg.model,
                data['train'],
                [],
                seed=0,
                epochs=3,
                lr=1e-2,
                decay_epochs=(2, 3),
                accumulate=len(data['train']),
            )

        rates = {
            call.args[3]: effective_learning_rate(call.args[0], call.args[3])
            for call in step.call_args_list
        }
        self.assertEqual(sorted(rates), [1, 2, 3])
        self.assertAlmostEqual(rates[1], 1e-2)
        self.assertAlmostEqual(rates[2], 1e-3)
        self.assertAlmostEqual(rates[3], 1e-4)

    def test_ternary_nlm_fits_ten_triangle_graphs(self):
        cfg = tiny_config('triangle', max_arity=3, depth=3, width=8, splits=(10, 0, 0))
        train = tiny_data(cfg)['train']

        outcome = optimize(
            cfg.model,
            train,
            [],
            seed=0,
            epochs=200,
            lr=1e-2,
            decay_epochs=(),
            accumulate=1,
            stop_when=lambda params: accuracy(params, train) == 100.0,
        )

        self.assertEqual(len(train), 10)
        self.assertEqual(outcome.train_accuracy, 100.0)
