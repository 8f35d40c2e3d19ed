"""
Readout heads and the masked binary cross-entropy loss.
"""
from typing import Dict, Optional, Tuple

import numpy as np

from apps.relnn.exceptions import ArityError
from apps.relnn.services.params import HEAD
from apps.tensor_core.services.mlp import MLPParams, mlp_backward, mlp_forward
from apps.tensor_core.services.tensor import DTYPE, DenseTensor


def _target_tensor(state: Dict[int, DenseTensor], target_arity: int) -> DenseTensor:
    if target_arity not in state:
        raise ArityError(
            f"state has arities {sorted(state)}, no arity-{target_arity} tensor to read"
        )
    return state[target_arity]


def readout_logits(
    state: Dict[int, DenseTensor], target_arity: int, head: MLPParams
) -> DenseTensor:
    """Linear W -> 1 map on the target-arity tensor, shaped [n]^arity."""
    return mlp_forward(head, _target_tensor(state, target_arity))[..., 0]


def sigmoid(z: DenseTensor) -> DenseTensor:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def readout(state: Dict[int, DenseTensor], target_arity: int, head: MLPParams) -> DenseTensor:
    """
    Probabilities at the target arity; predictions are probability >= 0.5.

    Raises:
        ArityError: If the state has no tensor at `target_arity`.
    """
    return sigmoid(readout_logits(state, target_arity, head))


def readout_backward(
    state: Dict[int, DenseTensor],
    target_arity: int,
    head: MLPParams,
    d_logits: DenseTensor,
) -> Tuple[Dict[str, DenseTensor], DenseTensor]:
    """Head gradients and the gradient of the target-arity tensor."""
    features = _target_tensor(state, target_arity)
    head_grads, d_features = mlp_backward(head, features, d_logits[..., None])
    return head_grads.named_arrays(HEAD), d_features


def masked_bce(
    logits: DenseTensor, labels: DenseTensor, mask: Optional[DenseTensor] = None
) -> Tuple[float, DenseTensor]:
    """
    Mean binary cross-entropy over masked positions, computed from logits.

    Returns:
        Tuple of (loss, gradient with respect to logits).
    """
    labels = np.asarray(labels, dtype=DTYPE)
    weights = np.ones_like(labels) if mask is None else np.asarray(mask, dtype=DTYPE)
    count = float(weights.sum())
    softplus = np.maximum(logits, 0.0) + np.log1p(np.exp(-np.abs(logits)))
    loss = float(np.sum((softplus - labels * logits) * weights) / count)
    d_logits = (sigmoid(logits) - labels) * weights / count
    return loss, d_logits


def pair_state(h: DenseTensor, pair_inputs: DenseTensor) -> DenseTensor:
    """
    Pair features of a 1-ary model: P[u, v] = [H[u], H[v], X2[u, v]].

    Args:
        h: Node features [n] x [W].
        pair_inputs: Binary input predicates [n] x [n] x [C2].
    """
    n, width = h.shape
    left = np.broadcast_to(h[:, None, :], (n, n, width))
    right = np.broadcast_to(h[None, :, :], (n, n, width))
    return np.concatenate([left, right, pair_inputs.astype(h.dtype)], axis=-1)


def pair_state_backward(d_pairs: DenseTensor, width: int) -> DenseTensor:
    """Gradient of the node features given the gradient of pair_state."""
    return d_pairs[..., :width].sum(axis=1) + d_pairs[..., width:2 * width].sum(axis=0)
