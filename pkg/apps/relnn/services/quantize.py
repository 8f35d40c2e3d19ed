"""
Fixed-precision activations.
"""
import numpy as np

from apps.relnn.exceptions import QuantizationError
from apps.tensor_core.services.tensor import DenseTensor


def grid_levels(bits: int) -> int:
    return 2 ** bits - 1


def quantize_activations(t: DenseTensor, bits: int) -> DenseTensor:
    """
    Round every entry to the nearest point of {k / (2^bits - 1)}.

    Ties round up. The backward pass is the identity (straight-through).

    Raises:
        QuantizationError: If an entry lies outside [0, 1].
    """
    if t.size and (np.min(t) < 0.0 or np.max(t) > 1.0):
        raise QuantizationError(
            f"cannot quantize values in [{np.min(t)}, {np.max(t)}] outside [0, 1]"
        )
    levels = grid_levels(bits)
    return np.floor(t * levels + 0.5) / levels


def on_grid(t: DenseTensor, bits: int) -> bool:
    """True when every entry is already a grid point."""
    return bool(np.array_equal(quantize_activations(t, bits), t))
