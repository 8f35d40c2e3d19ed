"""
Model inputs derived from a hypergraph representation.
"""
from typing import Dict, Tuple

import numpy as np

from apps.hypergraph.services.representation import EQUALITY, HypergraphRepr
from apps.relnn.exceptions import ArityError, ConfigMismatchError
from apps.relnn.services.config import ModelConfig
from apps.tensor_core.services.tensor import DTYPE, DenseTensor


def graph_channels(g: HypergraphRepr) -> Tuple[int, int, int]:
    """Channel counts of g at arities 0, 1 and 2."""
    return tuple(len(g.predicates.get(arity, ())) for arity in range(3))


def check_inputs(cfg: ModelConfig, g: HypergraphRepr) -> None:
    """
    Raises:
        ArityError: If g carries relations above arity 2.
        ConfigMismatchError: If g's channels differ from cfg.input_channels.
    """
    if g.max_arity > 2:
        raise ArityError(f"inputs above arity 2 are not supported, got {g.max_arity}")
    channels = graph_channels(g)
    if channels != cfg.input_channels:
        raise ConfigMismatchError(
            f"graph has input channels {channels}, model expects {cfg.input_channels}"
        )


def nlm_inputs(cfg: ModelConfig, g: HypergraphRepr) -> Dict[int, DenseTensor]:
    """T_0: the input relations per arity; arities above 2 have no channels."""
    check_inputs(cfg, g)
    state = {}
    for arity in range(cfg.max_arity + 1):
        if arity in g.relations:
            state[arity] = np.array(g.relations[arity], dtype=DTYPE)
        else:
            state[arity] = np.zeros((g.n,) * arity + (0,), dtype=DTYPE)
    return state


def _place(t: DenseTensor, axes: Tuple[int, ...], tuple_arity: int, n: int) -> DenseTensor:
    """Broadcast t's node axes onto the given positions of a tuple tensor."""
    shape = [1] * tuple_arity + [t.shape[-1]]
    for axis in axes:
        shape[axis] = n
    full = (n,) * tuple_arity + (t.shape[-1],)
    return np.broadcast_to(t.reshape(shape), full)


def atomic_types(cfg: ModelConfig, g: HypergraphRepr) -> DenseTensor:
    """
    Initial HO-GNN tuple features, shaped [n]^B x [C0].

    Channels, in order: arity-0 values; the arity-1 values of each position;
    the arity-2 values of every ordered position pair (p, q), p != q,
    including the equality channel.
    """
    check_inputs(cfg, g)
    b, n = cfg.max_arity, g.n
    parts = [_place(g.relations[0], (), b, n)]
    for position in range(b):
        parts.append(_place(g.relations[1], (position,), b, n))
    pairs = g.relations[2]
    for p in range(b):
        for q in range(b):
            if p == q:
                continue
            if p < q:
                parts.append(_place(pairs, (p, q), b, n))
            else:
                parts.append(_place(np.transpose(pairs, (1, 0, 2)), (q, p), b, n))
    return np.ascontiguousarray(np.concatenate(parts, axis=-1), dtype=DTYPE)


def pair_features(g: HypergraphRepr) -> Tuple[DenseTensor, DenseTensor]:
    """X2[v, u] and X2[u, v] laid out on the (v, u) grid."""
    pairs = np.array(g.relations[2], dtype=DTYPE)
    return pairs, np.ascontiguousarray(np.transpose(pairs, (1, 0, 2)))


def neighbor_gate(g: HypergraphRepr) -> DenseTensor:
    """1 where any binary predicate holds between v and u in either direction."""
    names = g.predicates[2]
    relation_channels = [i for i, name in enumerate(names) if name != EQUALITY]
    if not relation_channels:
        return np.zeros((g.n, g.n), dtype=DTYPE)
    held = np.any(g.relations[2][..., relation_channels] > 0.0, axis=-1)
    return (held | held.T).astype(DTYPE)
