"""
Relational tensor operations with exact backward passes.

Feature tensors are shaped [n]^j x [W]: j node axes followed by one
channel axis. "The last node axis" is therefore axis -2.
"""
from itertools import permutations
from typing import List, Optional, Tuple

import numpy as np

from apps.relnn.exceptions import AggregationError, ArityError
from apps.relnn.services.config import MAX_SUPPORTED_ARITY, Aggregator
from apps.tensor_core.services.tensor import DTYPE, DenseTensor, sorted_sum


def arity_of(t: DenseTensor) -> int:
    return t.ndim - 1


def expand(t: DenseTensor, n: int, max_arity: Optional[int] = None) -> DenseTensor:
    """
    Lift arity j-1 to arity j by copying along a new last node axis.

    output[v1..vj] = input[v1..v(j-1)] for every vj.

    Raises:
        ArityError: If the result would exceed `max_arity`.
    """
    arity = arity_of(t) + 1
    if max_arity is not None and arity > max_arity:
        raise ArityError(f"expand to arity {arity} exceeds max arity {max_arity}")
    return np.repeat(np.expand_dims(t, -2), n, axis=-2)


def expand_backward(upstream: DenseTensor) -> DenseTensor:
    return upstream.sum(axis=-2)


def _fixed_precision(mean: DenseTensor, decimals: int) -> DenseTensor:
    scale = 10.0 ** decimals
    return np.clip(np.floor(mean * scale + 0.5) / scale, 0.0, 1.0)


def reduce(t: DenseTensor, agg: Aggregator) -> DenseTensor:
    """
    Aggregate away the last node axis.

    sum adds values in sorted order, so the result depends only on the
    multiset along the axis. fpmean rounds half up to `agg.decimals`
    decimals and clips to [0, 1].

    Raises:
        ArityError: On an arity-0 input.
        AggregationError: For max over an empty axis.
    """
    if arity_of(t) < 1:
        raise ArityError("cannot reduce an arity-0 tensor")
    n = t.shape[-2]
    if agg.kind == 'sum':
        return sorted_sum(t, axis=-2)
    if agg.kind == 'max':
        if n == 0:
            raise AggregationError("max over an empty node axis is undefined")
        return np.max(t, axis=-2)
    if n == 0:
        return np.zeros(t.shape[:-2] + t.shape[-1:], dtype=DTYPE)
    return _fixed_precision(sorted_sum(t, axis=-2) / n, agg.decimals)


def reduce_backward(t: DenseTensor, agg: Aggregator, upstream: DenseTensor) -> DenseTensor:
    """
    Gradient of reduce(t, agg) with respect to t.

    max splits the gradient evenly among tied maxima. fpmean passes the
    gradient of the plain mean straight through the rounding.
    """
    n = t.shape[-2]
    spread = np.expand_dims(upstream, -2)
    if agg.kind == 'sum':
        return np.repeat(spread, n, axis=-2)
    if agg.kind == 'max':
        winners = (t == np.max(t, axis=-2, keepdims=True)).astype(DTYPE)
        return winners * spread / winners.sum(axis=-2, keepdims=True)
    if n == 0:
        return np.zeros_like(t)
    return np.repeat(spread / n, n, axis=-2)


def _orderings(arity: int) -> List[Tuple[int, ...]]:
    return list(permutations(range(arity)))


def _transpose_axes(sigma: Tuple[int, ...]) -> Tuple[int, ...]:
    """Axes for np.transpose so that out[v] = in[v_sigma(1) .. v_sigma(j)]."""
    axes = [0] * len(sigma)
    for position, source in enumerate(sigma):
        axes[source] = position
    return tuple(axes) + (len(sigma),)


def permute_fuse(t: DenseTensor) -> DenseTensor:
    """
    Concatenate the tensor under every ordering of its node axes.

    output[v1..vj] = concat over sigma in S_j (lexicographic) of
    input[v_sigma(1)..v_sigma(j)], giving W * j! channels.

    Examples:
        >>> x = np.array([[[0.0], [1.0]], [[2.0], [3.0]]])
        >>> permute_fuse(x)[0, 1].tolist()
        [1.0, 2.0]
    """
    arity = arity_of(t)
    if arity > MAX_SUPPORTED_ARITY:
        raise ArityError(f"permute_fuse supports arity <= {MAX_SUPPORTED_ARITY}, got {arity}")
    if arity <= 1:
        return t
    blocks = [np.transpose(t, _transpose_axes(sigma)) for sigma in _orderings(arity)]
    return np.concatenate(blocks, axis=-1)


def permute_fuse_backward(upstream: DenseTensor, arity: int) -> DenseTensor:
    """Gradient of permute_fuse for an arity-`arity` input."""
    if arity <= 1:
        return upstream
    orderings = _orderings(arity)
    width = upstream.shape[-1] // len(orderings)
    grad = None
    for index, sigma in enumerate(orderings):
        block = upstream[..., index * width:(index + 1) * width]
        inverse = np.argsort(_transpose_axes(sigma))
        moved = np.transpose(block, inverse)
        grad = moved if grad is None else grad + moved
    return grad
