"""
Model parameters: one MLP per network slot plus a linear readout head.

Network slots are named "<group>.<role>" where group is "layer1",
"layer<i>" or "shared" and role is "arity<j>" (NLM) or "msg"/"upd"
(HO-GNN). Flattened arrays are keyed "<slot>.w<l>" and "<slot>.b<l>".
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from apps.relnn.exceptions import ConfigMismatchError
from apps.relnn.services.config import ModelConfig
from apps.tensor_core.services.mlp import MLPParams, init_mlp
from apps.tensor_core.services.tensor import DenseTensor

HEAD = 'head'


def layer_group(cfg: ModelConfig, layer: int) -> str:
    """Slot group serving layer `layer` (1-based)."""
    if layer == 1:
        return 'layer1'
    if cfg.weight_sharing:
        return 'shared'
    return f'layer{layer}'


def _groups(cfg: ModelConfig) -> List[str]:
    if cfg.weight_sharing:
        if cfg.depth_policy == 'recurrent' or cfg.depth > 1:
            return ['layer1', 'shared']
        return ['layer1']
    return [layer_group(cfg, layer) for layer in range(1, cfg.depth + 1)]


def input_channels_by_arity(cfg: ModelConfig) -> List[int]:
    """Channel count of each NLM input arity 0..B; arities above 2 start empty."""
    channels = list(cfg.input_channels) + [0] * cfg.max_arity
    return channels[:cfg.max_arity + 1]


def nlm_block_width(channels: List[int], arity: int, max_arity: int) -> int:
    """Fused input width of the block at `arity` given per-arity channels."""
    width = channels[arity]
    if arity > 0:
        width += channels[arity - 1]
    if arity < max_arity:
        width += channels[arity + 1]
    return width * math.factorial(arity)


def hognn_input_width(cfg: ModelConfig) -> int:
    """Atomic-type channels of a B-tuple."""
    c0, c1, c2 = cfg.input_channels
    b = cfg.max_arity
    return c0 + b * c1 + b * (b - 1) * c2


def hognn_message_width(cfg: ModelConfig, tuple_width: int) -> int:
    width = tuple_width * (cfg.max_arity + 1)
    if cfg.max_arity == 1:
        width += 2 * cfg.input_channels[2]
    return width


def head_layout(cfg: ModelConfig) -> Tuple[int, ...]:
    """
    Layer sizes of the readout head.

    The pair readout of a 1-ary HO-GNN maps [H[u], H[v], X2[u, v]] through
    one hidden ReLU layer; every other head is linear.
    """
    if cfg.pair_readout:
        return (pair_readout_width(cfg), cfg.width, 1)
    return (cfg.width, 1)


def pair_readout_width(cfg: ModelConfig) -> int:
    return 2 * cfg.width + cfg.input_channels[2]


def network_layout(cfg: ModelConfig) -> Dict[str, Tuple[int, ...]]:
    """
    Ordered map from network slot to MLP layer sizes.

    Args:
        cfg: Model configuration.

    Returns:
        Dict[str, Tuple[int, ...]]: Slot name -> (in, hidden..., W).
    """
    hidden = (cfg.width,) * cfg.hidden_layers
    layout = {}
    for group in _groups(cfg):
        first = group == 'layer1'
        if cfg.family == 'nlm':
            channels = (
                input_channels_by_arity(cfg) if first else [cfg.width] * (cfg.max_arity + 1)
            )
            for arity in range(cfg.max_arity + 1):
                width = nlm_block_width(channels, arity, cfg.max_arity)
                layout[f'{group}.arity{arity}'] = (width,) + hidden + (cfg.width,)
        else:
            tuple_width = hognn_input_width(cfg) if first else cfg.width
            layout[f'{group}.msg'] = (hognn_message_width(cfg, tuple_width),) + hidden + (cfg.width,)
            layout[f'{group}.upd'] = (tuple_width + cfg.width,) + hidden + (cfg.width,)
    return layout


@dataclass(frozen=True)
class ModelParams:
    """
    All trainable weights of a model.

    Attributes:
        config: The configuration these weights belong to.
        networks: Slot name -> MLP.
        head: Readout producing logits, see head_layout.
    """
    config: ModelConfig
    networks: Dict[str, MLPParams]
    head: MLPParams

    def network(self, name: str) -> MLPParams:
        try:
            return self.networks[name]
        except KeyError:
            raise ConfigMismatchError(f"params have no network '{name}'") from None

    def named_arrays(self) -> Dict[str, DenseTensor]:
        arrays = {}
        for name, network in self.networks.items():
            arrays.update(network.named_arrays(name))
        arrays.update(self.head.named_arrays(HEAD))
        return arrays

    def with_arrays(self, arrays: Dict[str, DenseTensor]) -> 'ModelParams':
        """Same structure with the weights taken from `arrays`."""
        return ModelParams(
            config=self.config,
            networks={
                name: network.with_arrays(arrays, name)
                for name, network in self.networks.items()
            },
            head=self.head.with_arrays(arrays, HEAD),
        )


def init_params(cfg: ModelConfig, seed: int) -> ModelParams:
    """
    Fresh weights for `cfg`, deterministic in `seed`.

    Networks use ReLU hidden layers and the configured output activation;
    the head follows head_layout.
    """
    rng = np.random.default_rng(seed)
    networks = {
        name: init_mlp(sizes, rng, activation='relu', output_activation=cfg.output_activation)
        for name, sizes in network_layout(cfg).items()
    }
    head = init_mlp(head_layout(cfg), rng, activation='relu', output_activation='identity')
    return ModelParams(config=cfg, networks=networks, head=head)


def params_from_arrays(cfg: ModelConfig, arrays: Dict[str, DenseTensor]) -> ModelParams:
    """
    Assemble ModelParams for `cfg` from flattened arrays.

    Raises:
        ConfigMismatchError: If an array is missing, unexpected, or misshapen.
    """
    expected = {}
    layout = dict(network_layout(cfg))
    layout[HEAD] = head_layout(cfg)
    for name, sizes in layout.items():
        for index, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            expected[f'{name}.w{index}'] = (fan_in, fan_out)
            expected[f'{name}.b{index}'] = (fan_out,)

    missing = sorted(set(expected) - set(arrays))
    extra = sorted(set(arrays) - set(expected))
    if missing or extra:
        raise ConfigMismatchError(f"weights do not fit config: missing {missing}, unexpected {extra}")
    for key, shape in expected.items():
        if tuple(arrays[key].shape) != shape:
            raise ConfigMismatchError(
                f"weight '{key}' has shape {tuple(arrays[key].shape)}, expected {shape}"
            )

    def build(name, sizes, output_activation):
        count = len(sizes) - 1
        return MLPParams(
            weights=tuple(arrays[f'{name}.w{i}'] for i in range(count)),
            biases=tuple(arrays[f'{name}.b{i}'] for i in range(count)),
            activation='relu',
            output_activation=output_activation,
        )

    networks = {
        name: build(name, sizes, cfg.output_activation)
        for name, sizes in layout.items()
        if name != HEAD
    }
    return ModelParams(config=cfg, networks=networks, head=build(HEAD, layout[HEAD], 'identity'))


def check_params(cfg: ModelConfig, params: ModelParams) -> None:
    if params.config != cfg:
        raise ConfigMismatchError(
            f"params were built for config {params.config.config_hash()}, "
            f"not {cfg.config_hash()}"
        )
