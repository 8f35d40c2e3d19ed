"""Tests for the MLP forward pass."""
import math

import numpy as np
from django.test import SimpleTestCase

from apps.tensor_core.exceptions import ShapeMismatchError
from apps.tensor_core.services.mlp import MLPParams, init_mlp, mlp_forward
from apps.tensor_core.services.tensor import as_tensor


def _hand_rolled_forward(params, row):
    """Plain-python forward used as an independent oracle."""
    values = list(row)
    last = len(params.weights) - 1
    for index, (weight, bias) in enumerate(zip(params.weights, params.biases)):
        out = []
        for o in range(weight.shape[1]):
            total = float(bias[o])
            for i in range(weight.shape[0]):
                total += values[i] * float(weight[i, o])
            out.append(total)
        name = params.output_activation if index == last else params.activation
        if name == 'relu':
            out = [max(v, 0.0) for v in out]
        elif name == 'sigmoid':
            out = [1.0 / (1.0 + math.exp(-v)) for v in out]
        values = out
    return values


class TestMLPForward(SimpleTestCase):
    """Test mlp_forward."""

    def test_identity_layer(self):
        """Identity weights, zero bias and identity activation pass input through."""
        params = MLPParams(
            weights=(np.eye(2),),
            biases=(np.zeros(2),),
            output_activation='identity',
        )

        result = mlp_forward(params, as_tensor([1.0, 2.0]))

        np.testing.assert_array_equal(result, [1.0, 2.0])

    def test_sigmoid_of_zero(self):
        """Zero weights under a sigmoid give 0.5 for every output unit."""
        params = MLPParams(
            weights=(np.zeros((3, 4)),),
            biases=(np.zeros(4),),
            output_activation='sigmoid',
        )

        result = mlp_forward(params, as_tensor([0.3, -2.0, 7.5]))

        np.testing.assert_array_equal(result, [0.5, 0.5, 0.5, 0.5])

    def test_seeded_network_matches_hand_rolled_forward(self):
        """Seed 42, widths 4->8->2, ReLU hidden layer."""
        rng = np.random.default_rng(42)
        params = init_mlp((4, 8, 2), rng, activation='relu', output_activation='identity')
        x = rng.normal(size=4)

        result = mlp_forward(params, x)

        np.testing.assert_allclose(result, _hand_rolled_forward(params, x), rtol=1e-12)

    def test_leading_extents_preserved(self):
        """Output keeps leading axes and swaps the trailing extent."""
        params = init_mlp((3, 5, 6), np.random.default_rng(0))

        result = mlp_forward(params, np.ones((4, 4, 3)))

        self.assertEqual(result.shape, (4, 4, 6))

    def test_shape_mismatch_names_both_shapes(self):
        """A wrong trailing extent raises with both shapes in the message."""
        params = init_mlp((3, 2), np.random.default_rng(0))

        with self.assertRaises(ShapeMismatchError) as ctx:
            mlp_forward(params, np.ones((5, 4)))

        self.assertIn('(3,)', str(ctx.exception))
        self.assertIn('(5, 4)', str(ctx.exception))

    def test_forward_does_not_mutate_input(self):
        """Inputs are left untouched."""
        params = init_mlp((3, 4, 2), np.random.default_rng(1))
        x = np.random.default_rng(2).normal(size=(6, 3))
        before = x.copy()

        mlp_forward(params, x)

        np.testing.assert_array_equal(x, before)

    def test_deterministic_for_same_seed(self):
        """Same seed and input give bitwise-identical outputs."""
        first = init_mlp((4, 8, 2), np.random.default_rng(7))
        second = init_mlp((4, 8, 2), np.random.default_rng(7))
        x = np.linspace(-1.0, 1.0, 12).reshape(3, 4)

        np.testing.assert_array_equal(mlp_forward(first, x), mlp_forward(second, x))

    def test_row_result_independent_of_position(self):
        """Permuting rows permutes results bit for bit."""
        params = init_mlp((5, 16, 3), np.random.default_rng(3))
        x = np.random.default_rng(4).normal(size=(37, 5))
        order = np.random.default_rng(5).permutation(37)

        np.testing.assert_array_equal(
            mlp_forward(params, x[order]), mlp_forward(params, x)[order]
        )

    def test_inconsistent_layers_rejected(self):
        """Consecutive layer widths must agree."""
        with self.assertRaises(ShapeMismatchError):
            MLPParams(
                weights=(np.zeros((2, 3)), np.zeros((4, 1))),
                biases=(np.zeros(3), np.zeros(1)),
            )
