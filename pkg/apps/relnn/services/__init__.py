"""
Relational network services.

This module exports the NLM and HO-GNN models and their building blocks.
"""
from .config import Aggregator, ModelConfig, eval_rounds, recurrent_rounds
from .model import (
    ForwardTrace,
    backward,
    forward,
    hognn_forward,
    loss_and_grads,
    nlm_forward,
    predict,
    predictions,
    resolve_depth,
    trace_forward,
)
from .model_io import load_model, model_from_dict, model_to_dict, save_model
from .ops import (
    expand,
    expand_backward,
    permute_fuse,
    permute_fuse_backward,
    reduce,
    reduce_backward,
)
from .params import ModelParams, init_params, network_layout, params_from_arrays
from .quantize import on_grid, quantize_activations
from .readout import masked_bce, readout, readout_backward, readout_logits

__all__ = [
    'Aggregator',
    'ModelConfig',
    'eval_rounds',
    'recurrent_rounds',
    'ForwardTrace',
    'backward',
    'forward',
    'hognn_forward',
    'loss_and_grads',
    'nlm_forward',
    'predict',
    'predictions',
    'resolve_depth',
    'trace_forward',
    'load_model',
    'model_from_dict',
    'model_to_dict',
    'save_model',
    'expand',
    'expand_backward',
    'permute_fuse',
    'permute_fuse_backward',
    'reduce',
    'reduce_backward',
    'ModelParams',
    'init_params',
    'network_layout',
    'params_from_arrays',
    'on_grid',
    'quantize_activations',
    'masked_bce',
    'readout',
    'readout_backward',
    'readout_logits',
]
