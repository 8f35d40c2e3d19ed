"""Tests for the Adam optimizer."""
import numpy as np
from django.test import SimpleTestCase

from apps.tensor_core.exceptions import NonFiniteError
from apps.tensor_core.services.adam import (
    AdamState,
    adam_step,
    effective_learning_rate,
)


class TestAdamStep(SimpleTestCase):
    """Test adam_step and the learning rate schedule."""

    def test_moments_start_at_zero(self):
        """A fresh state has zero moments and step 0."""
        state = AdamState.create({'w': np.ones((2, 3))})

        self.assertEqual(state.step, 0)
        np.testing.assert_array_equal(state.first_moment['w'], np.zeros((2, 3)))
        np.testing.assert_array_equal(state.second_moment['w'], np.zeros((2, 3)))

    def test_zero_gradients_leave_params_unchanged(self):
        """Zero gradients only advance the step counter."""
        params = {'w': np.array([1.0, -2.0])}
        state = AdamState.create(params)

        new_params, new_state = adam_step(state, params, {'w': np.zeros(2)})

        np.testing.assert_array_equal(new_params['w'], params['w'])
        self.assertEqual(new_state.step, 1)

    def test_schedule_decays_at_fifty_and_eighty(self):
        """Base 3e-4 with two 0.1 decays is 3e-6 at epoch 90."""
        state = AdamState.create({}, lr=3e-4, decay_epochs=(50, 80), decay_factor=0.1)

        self.assertAlmostEqual(effective_learning_rate(state, 10), 3e-4)
        self.assertAlmostEqual(effective_learning_rate(state, 60), 3e-5)
        self.assertAlmostEqual(effective_learning_rate(state, 90), 3e-6)

    def test_decay_applies_from_its_own_epoch(self):
        state = AdamState.create({}, lr=3e-4, decay_epochs=(50, 80), decay_factor=0.1)

        self.assertAlmostEqual(effective_learning_rate(state, 49), 3e-4)
        self.assertAlmostEqual(effective_learning_rate(state, 50), 3e-5)
        self.assertAlmostEqual(effective_learning_rate(state, 51), 3e-5)
        self.assertAlmostEqual(effective_learning_rate(state, 79), 3e-5)
        self.assertAlmostEqual(effective_learning_rate(state, 80), 3e-6)

    def test_first_step_moves_by_learning_rate(self):
        """Constant gradient 1: bias-corrected moments are both 1."""
        params = {'p': np.array([0.0])}
        state = AdamState.create(params, lr=1e-3)

        new_params, _ = adam_step(state, params, {'p': np.array([1.0])})

        self.assertAlmostEqual(new_params['p'][0], -1e-3, places=10)

    def test_non_finite_gradient_names_parameter(self):
        """NaN gradients are rejected with the parameter name."""
        params = {'layer.w0': np.zeros(2)}
        state = AdamState.create(params)

        with self.assertRaises(NonFiniteError) as ctx:
            adam_step(state, params, {'layer.w0': np.array([0.0, np.nan])})

        self.assertIn('layer.w0', str(ctx.exception))

    def test_step_does_not_mutate_inputs(self):
        """Params and state are returned fresh."""
        params = {'w': np.array([0.5])}
        state = AdamState.create(params)

        adam_step(state, params, {'w': np.array([2.0])})

        np.testing.assert_array_equal(params['w'], [0.5])
        self.assertEqual(state.step, 0)
