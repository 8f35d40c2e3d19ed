"""
Adam optimizer over named parameter arrays.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Sequence, Tuple

import numpy as np

from apps.tensor_core.exceptions import NonFiniteError, ShapeMismatchError
from apps.tensor_core.services.tensor import DenseTensor

Arrays = Dict[str, DenseTensor]


@dataclass(frozen=True)
class AdamState:
    """
    Optimizer state.

    Attributes:
        lr: Base learning rate.
        beta1: First moment decay.
        beta2: Second moment decay.
        eps: Denominator floor.
        schedule: (epoch, multiplier) pairs; the effective rate is the base
            rate times every multiplier whose epoch has been reached.
        step: Number of updates applied so far.
        first_moment: Per-parameter running mean of gradients.
        second_moment: Per-parameter running mean of squared gradients.
    """
    lr: float = 3e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    schedule: Tuple[Tuple[int, float], ...] = ((50, 0.1), (80, 0.1))
    step: int = 0
    first_moment: Arrays = field(default_factory=dict)
    second_moment: Arrays = field(default_factory=dict)

    @classmethod
    def create(
        cls,
        params: Arrays,
        lr: float = 3e-4,
        decay_epochs: Sequence[int] = (50, 80),
        decay_factor: float = 0.1,
        **kwargs,
    ) -> 'AdamState':
        """Fresh state with zero moments shaped like `params`."""
        return cls(
            lr=lr,
            schedule=tuple((int(epoch), decay_factor) for epoch in decay_epochs),
            first_moment={name: np.zeros_like(p) for name, p in params.items()},
            second_moment={name: np.zeros_like(p) for name, p in params.items()},
            **kwargs,
        )


def effective_learning_rate(state: AdamState, epoch: int) -> float:
    rate = state.lr
    for boundary, multiplier in state.schedule:
        if epoch >= boundary:
            rate *= multiplier
    return rate


def adam_step(
    state: AdamState,
    params: Arrays,
    grads: Arrays,
    epoch: int = 0,
) -> Tuple[Arrays, AdamState]:
    """
    Apply one bias-corrected Adam update.

    Args:
        state: Current optimizer state.
        params: Named parameter arrays (not mutated).
        grads: Named gradients shaped like params.
        epoch: Current epoch, selects the scheduled learning rate.

    Returns:
        Tuple of (updated params, updated state).

    Raises:
        ShapeMismatchError: If a gradient is shaped unlike its parameter.
        NonFiniteError: If a gradient holds NaN or Inf, naming it.
    """
    step = state.step + 1
    rate = effective_learning_rate(state, epoch)
    first_correction = 1.0 - state.beta1 ** step
    second_correction = 1.0 - state.beta2 ** step

    new_params, new_first, new_second = {}, {}, {}
    for name, param in params.items():
        grad = grads.get(name)
        if grad is None:
            grad = np.zeros_like(param)
        if grad.shape != param.shape:
            raise ShapeMismatchError(f"gradient for '{name}'", param.shape, grad.shape)
        if not np.all(np.isfinite(grad)):
            raise NonFiniteError(name)

        first = state.first_moment.get(name, np.zeros_like(param))
        second = state.second_moment.get(name, np.zeros_like(param))
        first = state.beta1 * first + (1.0 - state.beta1) * grad
        second = state.beta2 * second + (1.0 - state.beta2) * grad * grad

        update = (first / first_correction) / (
            np.sqrt(second / second_correction) + state.eps
        )
        new_params[name] = param - rate * update
        new_first[name] = first
        new_second[name] = second

    return new_params, replace(
        state, step=step, first_moment=new_first, second_moment=new_second
    )
