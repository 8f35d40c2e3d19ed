"""
Multilayer perceptrons with hand-derived gradients.

Every network applies affine + activation per layer on the trailing axis
of its input, so the same parameters act independently on every tuple of
a relation tensor.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from apps.tensor_core.exceptions import (
    ShapeMismatchError,
    UnknownActivationError,
)
from apps.tensor_core.services.tensor import DTYPE, DenseTensor, affine

ACTIVATIONS = ('relu', 'sigmoid', 'identity')


def _activate(name: str, z: DenseTensor) -> DenseTensor:
    if name == 'relu':
        return np.maximum(z, 0.0)
    if name == 'sigmoid':
        return 0.5 * (1.0 + np.tanh(0.5 * z))
    if name == 'identity':
        return z
    raise UnknownActivationError(f"unknown activation '{name}'")


def _activation_grad(name: str, z: DenseTensor, a: DenseTensor) -> DenseTensor:
    if name == 'relu':
        return (z > 0.0).astype(DTYPE)
    if name == 'sigmoid':
        return a * (1.0 - a)
    if name == 'identity':
        return np.ones_like(z)
    raise UnknownActivationError(f"unknown activation '{name}'")


@dataclass(frozen=True)
class MLPParams:
    """
    Parameters of one multilayer perceptron.

    Attributes:
        weights: Per-layer weight matrices, layer l shaped [in_l, out_l].
        biases: Per-layer bias vectors shaped [out_l].
        activation: Activation after every hidden layer.
        output_activation: Activation after the last layer.
    """
    weights: Tuple[DenseTensor, ...]
    biases: Tuple[DenseTensor, ...]
    activation: str = 'relu'
    output_activation: str = 'identity'

    def __post_init__(self):
        if len(self.weights) != len(self.biases) or not self.weights:
            raise ShapeMismatchError(
                "weights and biases must pair up",
                len(self.weights),
                len(self.biases),
            )
        for index, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            if weight.ndim != 2 or bias.shape != (weight.shape[1],):
                raise ShapeMismatchError(
                    f"layer {index} bias does not match weight",
                    (weight.shape[1],),
                    bias.shape,
                )
            if index and self.weights[index - 1].shape[1] != weight.shape[0]:
                raise ShapeMismatchError(
                    f"layer {index} input width",
                    self.weights[index - 1].shape[1],
                    weight.shape[0],
                )
        for name in (self.activation, self.output_activation):
            if name not in ACTIVATIONS:
                raise UnknownActivationError(f"unknown activation '{name}'")

    @property
    def sizes(self) -> Tuple[int, ...]:
        return (self.weights[0].shape[0],) + tuple(w.shape[1] for w in self.weights)

    def layer_activation(self, index: int) -> str:
        if index == len(self.weights) - 1:
            return self.output_activation
        return self.activation

    def named_arrays(self, prefix: str) -> Dict[str, DenseTensor]:
        """Flatten into {prefix.w<l>, prefix.b<l>} arrays."""
        arrays = {}
        for index, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            arrays[f"{prefix}.w{index}"] = weight
            arrays[f"{prefix}.b{index}"] = bias
        return arrays

    def with_arrays(self, arrays: Dict[str, DenseTensor], prefix: str) -> 'MLPParams':
        """Rebuild with the arrays stored under `prefix` in `arrays`."""
        count = len(self.weights)
        return MLPParams(
            weights=tuple(arrays[f"{prefix}.w{i}"] for i in range(count)),
            biases=tuple(arrays[f"{prefix}.b{i}"] for i in range(count)),
            activation=self.activation,
            output_activation=self.output_activation,
        )


@dataclass(frozen=True)
class MLPGrads:
    """Gradients shaped like the MLPParams they belong to."""
    weights: Tuple[DenseTensor, ...]
    biases: Tuple[DenseTensor, ...]

    def named_arrays(self, prefix: str) -> Dict[str, DenseTensor]:
        arrays = {}
        for index, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            arrays[f"{prefix}.w{index}"] = weight
            arrays[f"{prefix}.b{index}"] = bias
        return arrays


@dataclass
class MLPCache:
    """Per-layer inputs and pre-activations recorded by a forward pass."""
    inputs: List[DenseTensor] = field(default_factory=list)
    pre_activations: List[DenseTensor] = field(default_factory=list)
    outputs: List[DenseTensor] = field(default_factory=list)


def init_mlp(
    sizes: Sequence[int],
    rng: np.random.Generator,
    activation: str = 'relu',
    output_activation: str = 'identity',
) -> MLPParams:
    """
    Initialize an MLP with Glorot-uniform weights and zero biases.

    Args:
        sizes: Layer widths [in, hidden..., out].
        rng: Source of randomness.
        activation: Hidden activation.
        output_activation: Activation of the last layer.

    Returns:
        MLPParams: Fresh parameters.
    """
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / max(fan_in + fan_out, 1))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out, dtype=DTYPE))
    return MLPParams(
        weights=tuple(weights),
        biases=tuple(biases),
        activation=activation,
        output_activation=output_activation,
    )


def mlp_forward_cached(params: MLPParams, x: DenseTensor) -> Tuple[DenseTensor, MLPCache]:
    """Forward pass that also returns what mlp_backward needs."""
    if x.shape[-1] != params.sizes[0]:
        raise ShapeMismatchError(
            "input trailing extent does not match first layer width",
            (params.sizes[0],),
            x.shape,
        )
    cache = MLPCache()
    h = x
    for index, (weight, bias) in enumerate(zip(params.weights, params.biases)):
        cache.inputs.append(h)
        z = affine(h, weight, bias)
        h = _activate(params.layer_activation(index), z)
        cache.pre_activations.append(z)
        cache.outputs.append(h)
    return h, cache


def mlp_forward(params: MLPParams, x: DenseTensor) -> DenseTensor:
    """
    Run the MLP over the trailing feature axis of `x`.

    Raises:
        ShapeMismatchError: If x's trailing extent is not the input width.
    """
    output, _ = mlp_forward_cached(params, x)
    return output


def mlp_backward(
    params: MLPParams,
    x: DenseTensor,
    upstream: DenseTensor,
    cache: Optional[MLPCache] = None,
) -> Tuple[MLPGrads, DenseTensor]:
    """
    Exact gradients of sum(upstream * mlp_forward(params, x)).

    Args:
        params: Network parameters.
        x: Input the forward pass saw.
        upstream: Gradient with respect to the forward output.
        cache: Optional cache from mlp_forward_cached to skip recomputing.

    Returns:
        Tuple of (parameter gradients, input gradient).

    Raises:
        ShapeMismatchError: If upstream is not shaped like the output.
    """
    if cache is None:
        _, cache = mlp_forward_cached(params, x)
    expected = x.shape[:-1] + (params.sizes[-1],)
    if upstream.shape != expected:
        raise ShapeMismatchError("upstream gradient shape", expected, upstream.shape)

    weight_grads = [None] * len(params.weights)
    bias_grads = [None] * len(params.weights)
    grad = upstream
    for index in reversed(range(len(params.weights))):
        z = cache.pre_activations[index]
        a = cache.outputs[index]
        grad = grad * _activation_grad(params.layer_activation(index), z, a)

        layer_input = cache.inputs[index]
        flat_input = layer_input.reshape(-1, layer_input.shape[-1])
        flat_grad = grad.reshape(-1, grad.shape[-1])
        weight_grads[index] = flat_input.T @ flat_grad
        bias_grads[index] = flat_grad.sum(axis=0)
        grad = grad @ params.weights[index].T

    return MLPGrads(weights=tuple(weight_grads), biases=tuple(bias_grads)), grad
