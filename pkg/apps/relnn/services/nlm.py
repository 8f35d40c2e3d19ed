"""
Neural Logic Machine forward and backward passes.

Layer i computes, for every arity j in 0..B,

    T_i[j] = NN_{i,j}(permute_fuse(concat(expand(T_{i-1}[j-1]),
                                          T_{i-1}[j],
                                          reduce(T_{i-1}[j+1]))))

where the lower block is absent at j = 0 and the upper block at j = B.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from apps.relnn.services.config import Aggregator, ModelConfig
from apps.relnn.services.ops import (
    expand,
    expand_backward,
    permute_fuse,
    permute_fuse_backward,
    reduce,
    reduce_backward,
)
from apps.relnn.services.params import ModelParams, layer_group
from apps.relnn.services.quantize import quantize_activations
from apps.tensor_core.services.mlp import MLPCache, mlp_backward, mlp_forward_cached
from apps.tensor_core.services.tensor import DenseTensor

LayerState = Dict[int, DenseTensor]


@dataclass
class BlockCache:
    slot: str
    widths: Tuple[int, int, int]
    fused: DenseTensor
    mlp: MLPCache


@dataclass
class NLMLayerCache:
    layer: int
    aggregator: Aggregator
    inputs: LayerState
    blocks: Dict[int, BlockCache] = field(default_factory=dict)


def nlm_layer(
    cfg: ModelConfig,
    params: ModelParams,
    state: LayerState,
    layer: int,
    n: int,
    caches: Optional[List[NLMLayerCache]] = None,
) -> LayerState:
    """Run one NLM layer over every arity."""
    b = cfg.max_arity
    agg = cfg.aggregator_at(layer)
    group = layer_group(cfg, layer)
    cache = NLMLayerCache(layer=layer, aggregator=agg, inputs=state)
    output = {}
    for arity in range(b + 1):
        lower = expand(state[arity - 1], n, b) if arity > 0 else None
        upper = reduce(state[arity + 1], agg) if arity < b else None
        parts = [part for part in (lower, state[arity], upper) if part is not None]
        widths = (
            lower.shape[-1] if lower is not None else 0,
            state[arity].shape[-1],
            upper.shape[-1] if upper is not None else 0,
        )
        fused = permute_fuse(np.concatenate(parts, axis=-1))
        slot = f'{group}.arity{arity}'
        result, mlp_cache = mlp_forward_cached(params.network(slot), fused)
        if cfg.quant_bits is not None:
            result = quantize_activations(result, cfg.quant_bits)
        output[arity] = result
        cache.blocks[arity] = BlockCache(slot=slot, widths=widths, fused=fused, mlp=mlp_cache)
    if caches is not None:
        caches.append(cache)
    return output


def nlm_run(
    cfg: ModelConfig,
    params: ModelParams,
    state: LayerState,
    depth: int,
    n: int,
    caches: Optional[List[NLMLayerCache]] = None,
) -> LayerState:
    for layer in range(1, depth + 1):
        state = nlm_layer(cfg, params, state, layer, n, caches)
    return state


def _accumulate(grads: Dict[str, DenseTensor], new: Dict[str, DenseTensor]) -> None:
    for key, value in new.items():
        if key in grads:
            grads[key] = grads[key] + value
        else:
            grads[key] = value


def nlm_backward(
    cfg: ModelConfig,
    params: ModelParams,
    caches: List[NLMLayerCache],
    d_state: LayerState,
) -> Dict[str, DenseTensor]:
    """
    Parameter gradients given the gradient of the final layer state.

    Shared slots accumulate their gradient over every layer they serve.
    Quantization is treated as the identity.

    Args:
        cfg: Model configuration.
        params: Parameters the forward pass used.
        caches: Layer caches recorded by the forward pass, first to last.
        d_state: Arity -> gradient of the final state (missing arities are zero).

    Returns:
        Dict[str, DenseTensor]: Flattened gradients keyed like named_arrays().
    """
    grads: Dict[str, DenseTensor] = {}
    b = cfg.max_arity
    upstream = dict(d_state)
    for cache in reversed(caches):
        previous = {arity: np.zeros_like(t) for arity, t in cache.inputs.items()}
        for arity in range(b + 1):
            d_out = upstream.get(arity)
            if d_out is None:
                continue
            block = cache.blocks[arity]
            network = params.network(block.slot)
            mlp_grads, d_fused = mlp_backward(network, block.fused, d_out, block.mlp)
            _accumulate(grads, mlp_grads.named_arrays(block.slot))
            if cache.layer == 1:
                continue

            d_concat = permute_fuse_backward(d_fused, arity)
            low, same, _ = block.widths
            if arity > 0:
                previous[arity - 1] += expand_backward(d_concat[..., :low])
            previous[arity] += d_concat[..., low:low + same]
            if arity < b:
                previous[arity + 1] += reduce_backward(
                    cache.inputs[arity + 1], cache.aggregator, d_concat[..., low + same:]
                )
        upstream = previous
    return grads
