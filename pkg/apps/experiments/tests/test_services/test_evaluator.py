"""Tests for accuracy and evaluate."""
from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase

from apps.datasets.services.dataset import DatasetSpec, generate_split
from apps.experiments.exceptions import EmptyMaskError
from apps.experiments.services.evaluator import accuracy, evaluate
from apps.experiments.tests.fixtures.configs import tiny_config
from apps.relnn.services.params import init_params

PREDICT = 'apps.experiments.services.evaluator.predict'


def _samples(task, n, count, seed=0):
    return generate_split(DatasetSpec(task=task, n=n, splits=(0, 0, count), seed=seed), 'test', count)


def _oracle_predict(samples):
    """A predictor returning each sample's labels as probabilities."""
    by_graph = {id(sample.input): sample.target.labels for sample in samples}
    return lambda params, g, depth=None: by_graph[id(g)].astype(np.float64)


class TestAccuracy(SimpleTestCase):
    """Test accuracy on scored positions."""

    def setUp(self):
        self.params = init_params(tiny_config().model, 0)

    def test_all_correct_predictor(self):
        samples = _samples('triangle', 8, 6)

        with patch(PREDICT, side_effect=_oracle_predict(samples)):
            self.assertEqual(accuracy(self.params, samples), 100.0)

    def test_constant_predictor_on_balanced_data(self):
        samples = _samples('triangle', 8, 10)

        with patch(PREDICT, return_value=np.array(0.0)):
            self.assertEqual(accuracy(self.params, samples), 50.0)

    def test_only_masked_positions_count(self):
        samples = _samples('connectivity4', 8, 3)
        oracle = _oracle_predict(samples)

        def wrong_off_mask(params, g, depth=None):
            sample = next(s for s in samples if s.input is g)
            labels = oracle(params, g)
            return np.where(sample.target.scored == 1, labels, 1.0 - labels)

        with patch(PREDICT, side_effect=wrong_off_mask):
            self.assertEqual(accuracy(self.params, samples), 100.0)

    def test_empty_set(self):
        with self.assertRaises(EmptyMaskError):
            accuracy(self.params, [])


class TestEvaluate(SimpleTestCase):
    """Test evaluate across sizes."""

    def test_one_accuracy_per_size(self):
        params = init_params(tiny_config().model, 0)
        data = {12: _samples('triangle', 12, 4), 8: _samples('triangle', 8, 4)}

        accuracies, seconds = evaluate(params, data)

        self.assertEqual(sorted(accuracies), [8, 12])
        self.assertEqual(sorted(seconds), [8, 12])
        for value in accuracies.values():
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 100.0)
        self.assertEqual(accuracies[8], accuracy(params, data[8]))
