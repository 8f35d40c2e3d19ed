"""Tests for MLP gradients against finite differences."""
import numpy as np
from django.test import SimpleTestCase

from apps.tensor_core.exceptions import ShapeMismatchError
from apps.tensor_core.services.mlp import (
    MLPParams,
    init_mlp,
    mlp_backward,
    mlp_forward,
    mlp_forward_cached,
)

STEP = 1e-5
RELATIVE_TOLERANCE = 1e-4
ABSOLUTE_FLOOR = 1e-7


def _objective(params, x, upstream):
    return float(np.sum(mlp_forward(params, x) * upstream))


def _clear_of_kinks(params, x, margin=1e-3):
    """True when no ReLU pre-activation sits within `margin` of zero."""
    _, cache = mlp_forward_cached(params, x)
    return all(
        np.min(np.abs(z)) > margin
        for index, z in enumerate(cache.pre_activations)
        if params.layer_activation(index) == 'relu'
    )


def _assert_close(test, analytic, numeric, label):
    error = abs(analytic - numeric)
    bound = max(RELATIVE_TOLERANCE * max(abs(analytic), abs(numeric)), ABSOLUTE_FLOOR)
    test.assertLessEqual(error, bound, f"{label}: analytic {analytic} vs numeric {numeric}")


def _check_gradients(test, params, x, upstream):
    grads, input_grad = mlp_backward(params, x, upstream)

    for layer in range(len(params.weights)):
        for array, grad, kind in (
            (params.weights[layer], grads.weights[layer], 'w'),
            (params.biases[layer], grads.biases[layer], 'b'),
        ):
            for index in np.ndindex(array.shape):
                original = array[index]
                array[index] = original + STEP
                plus = _objective(params, x, upstream)
                array[index] = original - STEP
                minus = _objective(params, x, upstream)
                array[index] = original
                numeric = (plus - minus) / (2 * STEP)
                _assert_close(test, grad[index], numeric, f"{kind}{layer}{index}")

    for index in np.ndindex(x.shape):
        original = x[index]
        x[index] = original + STEP
        plus = _objective(params, x, upstream)
        x[index] = original - STEP
        minus = _objective(params, x, upstream)
        x[index] = original
        _assert_close(test, input_grad[index], (plus - minus) / (2 * STEP), f"x{index}")


class TestMLPBackward(SimpleTestCase):
    """Test mlp_backward."""

    def test_zero_upstream_gives_zero_gradients(self):
        """Backprop is linear in the upstream gradient."""
        params = init_mlp((3, 5, 2), np.random.default_rng(0), output_activation='sigmoid')
        x = np.random.default_rng(1).normal(size=(4, 3))

        grads, input_grad = mlp_backward(params, x, np.zeros((4, 2)))

        for array in grads.weights + grads.biases + (input_grad,):
            np.testing.assert_array_equal(array, np.zeros_like(array))

    def test_single_linear_unit(self):
        """y = w*x with x=3, upstream 1: dL/dw = 3, dL/dx = w."""
        params = MLPParams(
            weights=(np.array([[0.7]]),),
            biases=(np.zeros(1),),
            output_activation='identity',
        )

        grads, input_grad = mlp_backward(params, np.array([3.0]), np.array([1.0]))

        self.assertAlmostEqual(grads.weights[0][0, 0], 3.0)
        self.assertAlmostEqual(grads.biases[0][0], 1.0)
        self.assertAlmostEqual(input_grad[0], 0.7)

    def test_relu_network_matches_finite_differences(self):
        """Random 4->8->2 ReLU network."""
        rng = np.random.default_rng(42)
        params = init_mlp((4, 8, 2), rng, activation='relu', output_activation='identity')
        x = rng.normal(size=(3, 4))
        while not _clear_of_kinks(params, x):
            x = rng.normal(size=(3, 4))

        _check_gradients(self, params, x, rng.normal(size=(3, 2)))

    def test_hundred_random_configurations(self):
        """Seeded sweep over widths <= 16 and every activation."""
        rng = np.random.default_rng(2024)
        activations = ('relu', 'sigmoid', 'identity')

        for trial in range(100):
            depth = int(rng.integers(1, 4))
            sizes = tuple(int(s) for s in rng.integers(1, 17, size=depth + 1))
            while True:
                params = init_mlp(
                    sizes,
                    rng,
                    activation=activations[trial % 3],
                    output_activation=activations[(trial // 3) % 3],
                )
                # Glorot init is tiny for narrow layers; widen the spread a bit.
                params = MLPParams(
                    weights=tuple(w * 2.0 for w in params.weights),
                    biases=tuple(rng.normal(scale=0.1, size=b.shape) for b in params.biases),
                    activation=params.activation,
                    output_activation=params.output_activation,
                )
                x = rng.normal(size=(2, sizes[0]))
                if _clear_of_kinks(params, x):
                    break

            with self.subTest(trial=trial, sizes=sizes):
                _check_gradients(self, params, x, rng.normal(size=(2, sizes[-1])))

    def test_upstream_shape_mismatch(self):
        """Upstream must be shaped like the forward output."""
        params = init_mlp((3, 2), np.random.default_rng(0))

        with self.assertRaises(ShapeMismatchError):
            mlp_backward(params, np.ones((4, 3)), np.ones((4, 3)))
