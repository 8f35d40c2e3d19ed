"""
Higher-order GNN forward and backward passes.

Features live on B-tuples. A tuple's neighbors are the tuples that differ
from it at one position; a round computes

    Received[v] = agg_u NN_msg(H[v], H[v/1<-u], ..., H[v/B<-u])
    H'[v]       = NN_upd(H[v], Received[v])

For B = 1 (a plain GNN) the message also sees X2[v, u] and X2[u, v] and
is zeroed unless some binary predicate links v and u.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from apps.relnn.services.config import Aggregator, ModelConfig
from apps.relnn.services.ops import expand, expand_backward, reduce, reduce_backward
from apps.relnn.services.params import ModelParams, layer_group
from apps.relnn.services.quantize import quantize_activations
from apps.tensor_core.services.mlp import MLPCache, mlp_backward, mlp_forward_cached
from apps.tensor_core.services.tensor import DenseTensor


@dataclass(frozen=True)
class PairContext:
    """Graph-level tensors a B = 1 round needs."""
    gate: DenseTensor
    forward_pairs: DenseTensor
    backward_pairs: DenseTensor


@dataclass
class HOGNNLayerCache:
    layer: int
    aggregator: Aggregator
    inputs: DenseTensor
    msg_slot: str
    upd_slot: str
    msg_input: DenseTensor
    msg_cache: MLPCache
    gated: DenseTensor
    upd_input: DenseTensor
    upd_cache: MLPCache


def substitute(h: DenseTensor, position: int) -> DenseTensor:
    """
    S[v, u] = h[v with its `position`-th node replaced by u].

    The result has shape [n]^B x [n] x [W]; the u axis is axis -2.
    """
    arity = h.ndim - 1
    n, width = h.shape[0], h.shape[-1]
    moved = np.expand_dims(np.moveaxis(h, position, arity - 1), position)
    return np.broadcast_to(moved, (n,) * arity + (n, width))


def substitute_backward(upstream: DenseTensor, position: int) -> DenseTensor:
    arity = upstream.ndim - 2
    return np.moveaxis(upstream.sum(axis=position), arity - 1, position)


def hognn_layer(
    cfg: ModelConfig,
    params: ModelParams,
    h: DenseTensor,
    layer: int,
    pairs: Optional[PairContext] = None,
    caches: Optional[List[HOGNNLayerCache]] = None,
) -> DenseTensor:
    """Run one message-passing round."""
    b = cfg.max_arity
    n = h.shape[0]
    agg = cfg.aggregator_at(layer)
    group = layer_group(cfg, layer)
    msg_slot, upd_slot = f'{group}.msg', f'{group}.upd'

    parts = [expand(h, n)] + [substitute(h, position) for position in range(b)]
    if b == 1:
        parts += [pairs.forward_pairs, pairs.backward_pairs]
    msg_input = np.concatenate(parts, axis=-1)
    messages, msg_cache = mlp_forward_cached(params.network(msg_slot), msg_input)
    gated = messages * pairs.gate[..., None] if b == 1 else messages
    received = reduce(gated, agg)

    upd_input = np.concatenate([h, received], axis=-1)
    result, upd_cache = mlp_forward_cached(params.network(upd_slot), upd_input)
    if cfg.quant_bits is not None:
        result = quantize_activations(result, cfg.quant_bits)

    if caches is not None:
        caches.append(HOGNNLayerCache(
            layer=layer,
            aggregator=agg,
            inputs=h,
            msg_slot=msg_slot,
            upd_slot=upd_slot,
            msg_input=msg_input,
            msg_cache=msg_cache,
            gated=gated,
            upd_input=upd_input,
            upd_cache=upd_cache,
        ))
    return result


def hognn_run(
    cfg: ModelConfig,
    params: ModelParams,
    h: DenseTensor,
    depth: int,
    pairs: Optional[PairContext] = None,
    caches: Optional[List[HOGNNLayerCache]] = None,
) -> DenseTensor:
    for layer in range(1, depth + 1):
        h = hognn_layer(cfg, params, h, layer, pairs, caches)
    return h


def hognn_backward(
    cfg: ModelConfig,
    params: ModelParams,
    caches: List[HOGNNLayerCache],
    d_h: DenseTensor,
    pairs: Optional[PairContext] = None,
) -> Dict[str, DenseTensor]:
    """
    Parameter gradients given the gradient of the final tuple features.

    Returns:
        Dict[str, DenseTensor]: Flattened gradients keyed like named_arrays().
    """
    b = cfg.max_arity
    grads: Dict[str, DenseTensor] = {}

    def accumulate(new):
        for key, value in new.items():
            grads[key] = grads[key] + value if key in grads else value

    for cache in reversed(caches):
        width = cache.inputs.shape[-1]
        upd_grads, d_upd_input = mlp_backward(
            params.network(cache.upd_slot), cache.upd_input, d_h, cache.upd_cache
        )
        accumulate(upd_grads.named_arrays(cache.upd_slot))

        d_gated = reduce_backward(cache.gated, cache.aggregator, d_upd_input[..., width:])
        d_messages = d_gated * pairs.gate[..., None] if b == 1 else d_gated
        msg_grads, d_msg_input = mlp_backward(
            params.network(cache.msg_slot), cache.msg_input, d_messages, cache.msg_cache
        )
        accumulate(msg_grads.named_arrays(cache.msg_slot))
        if cache.layer == 1:
            break

        d_h = d_upd_input[..., :width] + expand_backward(d_msg_input[..., :width])
        for position in range(b):
            block = d_msg_input[..., (position + 1) * width:(position + 2) * width]
            d_h = d_h + substitute_backward(block, position)
    return grads
