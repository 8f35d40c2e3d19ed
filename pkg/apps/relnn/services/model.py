"""
Family dispatch: forward passes, traces for backpropagation, and the
per-graph loss/gradient primitive the trainer uses.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from apps.hypergraph.services.representation import HypergraphRepr, TaskTarget
from apps.relnn.exceptions import ConfigMismatchError
from apps.relnn.services.config import ModelConfig, eval_rounds
from apps.relnn.services.hognn import (
    HOGNNLayerCache,
    PairContext,
    hognn_backward,
    hognn_run,
)
from apps.relnn.services.inputs import atomic_types, neighbor_gate, nlm_inputs, pair_features
from apps.relnn.services.nlm import LayerState, NLMLayerCache, nlm_backward, nlm_run
from apps.relnn.services.ops import reduce, reduce_backward
from apps.relnn.services.params import ModelParams, check_params
from apps.relnn.services.readout import (
    masked_bce,
    pair_state,
    pair_state_backward,
    readout,
    readout_backward,
    readout_logits,
)
from apps.tensor_core.services.tensor import DenseTensor


@dataclass
class ForwardTrace:
    """Everything backward() needs from one forward pass."""
    config: ModelConfig
    params: ModelParams
    depth: int
    state: LayerState
    nlm_caches: List[NLMLayerCache] = field(default_factory=list)
    hognn_caches: List[HOGNNLayerCache] = field(default_factory=list)
    pairs: Optional[PairContext] = None


def resolve_depth(cfg: ModelConfig, n: int, depth: Optional[int] = None) -> int:
    """
    Number of layers to run on an n-node graph.

    Recurrent models default to eval_rounds(n). Only weight-shared models
    may run at a depth other than cfg.depth.
    """
    if depth is None:
        return eval_rounds(n) if cfg.depth_policy == 'recurrent' else cfg.depth
    if depth < 1:
        raise ConfigMismatchError(f"depth must be >= 1, got {depth}")
    if depth != cfg.depth and (not cfg.weight_sharing or cfg.layer_aggregators is not None):
        raise ConfigMismatchError(
            f"a model without weight sharing runs exactly {cfg.depth} layers, not {depth}"
        )
    return depth


def _pair_context(cfg: ModelConfig, g: HypergraphRepr) -> Optional[PairContext]:
    if cfg.max_arity != 1:
        return None
    forward_pairs, backward_pairs = pair_features(g)
    return PairContext(
        gate=neighbor_gate(g),
        forward_pairs=forward_pairs,
        backward_pairs=backward_pairs,
    )


def derived_arities(
    h: DenseTensor, cfg: ModelConfig, pairs: Optional[PairContext] = None
) -> LayerState:
    """
    HO-GNN tuple features plus their successive reductions down to arity 0.

    With the pair readout, arity 2 holds pair_state over the node features.
    """
    state = {cfg.max_arity: h}
    for arity in range(cfg.max_arity - 1, -1, -1):
        state[arity] = reduce(state[arity + 1], cfg.readout_aggregator)
    if cfg.pair_readout:
        state[2] = pair_state(h, pairs.forward_pairs)
    return state


def trace_forward(
    cfg: ModelConfig,
    params: ModelParams,
    g: HypergraphRepr,
    depth: Optional[int] = None,
) -> ForwardTrace:
    """Forward pass that records layer caches."""
    check_params(cfg, params)
    depth = resolve_depth(cfg, g.n, depth)
    trace = ForwardTrace(config=cfg, params=params, depth=depth, state={})
    if cfg.family == 'nlm':
        trace.state = nlm_run(cfg, params, nlm_inputs(cfg, g), depth, g.n, trace.nlm_caches)
    else:
        trace.pairs = _pair_context(cfg, g)
        h = hognn_run(cfg, params, atomic_types(cfg, g), depth, trace.pairs, trace.hognn_caches)
        trace.state = derived_arities(h, cfg, trace.pairs)
    return trace


def nlm_forward(
    cfg: ModelConfig,
    params: ModelParams,
    g: HypergraphRepr,
    depth: Optional[int] = None,
) -> LayerState:
    """
    Final NLM layer state: arity -> tensor [n]^arity x [W].

    Raises:
        ConfigMismatchError: If params or graph channels disagree with cfg.
    """
    check_params(cfg, params)
    if cfg.family != 'nlm':
        raise ConfigMismatchError(f"nlm_forward called with family '{cfg.family}'")
    depth = resolve_depth(cfg, g.n, depth)
    return nlm_run(cfg, params, nlm_inputs(cfg, g), depth, g.n)


def hognn_forward(
    cfg: ModelConfig,
    params: ModelParams,
    g: HypergraphRepr,
    depth: Optional[int] = None,
) -> LayerState:
    """
    Final HO-GNN state. Arity B holds the tuple features [n]^B x [W]; lower
    arities are successive reductions used by readout.
    """
    check_params(cfg, params)
    if cfg.family != 'hognn':
        raise ConfigMismatchError(f"hognn_forward called with family '{cfg.family}'")
    depth = resolve_depth(cfg, g.n, depth)
    pairs = _pair_context(cfg, g)
    h = hognn_run(cfg, params, atomic_types(cfg, g), depth, pairs)
    return derived_arities(h, cfg, pairs)


def forward(
    cfg: ModelConfig,
    params: ModelParams,
    g: HypergraphRepr,
    depth: Optional[int] = None,
) -> LayerState:
    if cfg.family == 'nlm':
        return nlm_forward(cfg, params, g, depth)
    return hognn_forward(cfg, params, g, depth)


def predict(params: ModelParams, g: HypergraphRepr, depth: Optional[int] = None) -> DenseTensor:
    """Probabilities at the config's target arity."""
    cfg = params.config
    return readout(forward(cfg, params, g, depth), cfg.target_arity, params.head)


def backward(trace: ForwardTrace, d_state: LayerState) -> Dict[str, DenseTensor]:
    """
    Gradients of every network given gradients of the traced final state.

    Args:
        trace: Result of trace_forward.
        d_state: Arity -> gradient; absent arities contribute nothing.

    Returns:
        Dict[str, DenseTensor]: Gradients keyed like ModelParams.named_arrays().
    """
    cfg, params = trace.config, trace.params
    if cfg.family == 'nlm':
        return nlm_backward(cfg, params, trace.nlm_caches, d_state)

    if cfg.pair_readout and 2 in d_state:
        d_state = dict(d_state)
        d_nodes = pair_state_backward(d_state.pop(2), cfg.width)
        d_state[1] = d_state[1] + d_nodes if 1 in d_state else d_nodes
    carry = d_state.get(0)
    for arity in range(1, cfg.max_arity + 1):
        own = d_state.get(arity)
        if carry is not None:
            carry = reduce_backward(trace.state[arity], cfg.readout_aggregator, carry)
            if own is not None:
                carry = carry + own
        else:
            carry = own
    if carry is None:
        return {}
    return hognn_backward(cfg, params, trace.hognn_caches, carry, trace.pairs)


def loss_and_grads(
    params: ModelParams,
    g: HypergraphRepr,
    target: TaskTarget,
    depth: Optional[int] = None,
) -> Tuple[float, Dict[str, DenseTensor], DenseTensor]:
    """
    Masked BCE of one graph and its gradient for every parameter.

    Returns:
        Tuple of (loss, gradients keyed like named_arrays(), logits).
    """
    cfg = params.config
    trace = trace_forward(cfg, params, g, depth)
    logits = readout_logits(trace.state, cfg.target_arity, params.head)
    loss, d_logits = masked_bce(logits, target.labels, target.mask)
    head_grads, d_features = readout_backward(
        trace.state, cfg.target_arity, params.head, d_logits
    )
    grads = backward(trace, {cfg.target_arity: d_features})
    grads.update(head_grads)
    return loss, grads, logits


def predictions(probabilities: DenseTensor) -> np.ndarray:
    return (probabilities >= 0.5).astype(np.int64)
