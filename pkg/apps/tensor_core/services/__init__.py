"""
Tensor core services.

This module exports the numeric building blocks every model uses.
"""
from .adam import AdamState, adam_step, effective_learning_rate
from .mlp import (
    MLPCache,
    MLPGrads,
    MLPParams,
    init_mlp,
    mlp_backward,
    mlp_forward,
    mlp_forward_cached,
)
from .tensor import DenseTensor, affine, as_tensor, ensure_finite, sorted_sum, zeros

__all__ = [
    'AdamState',
    'adam_step',
    'effective_learning_rate',
    'MLPCache',
    'MLPGrads',
    'MLPParams',
    'init_mlp',
    'mlp_backward',
    'mlp_forward',
    'mlp_forward_cached',
    'DenseTensor',
    'affine',
    'as_tensor',
    'ensure_finite',
    'sorted_sum',
    'zeros',
]
