"""
Dense tensor helpers.

A DenseTensor is a C-contiguous float64 numpy array: its shape is the
tensor shape and its row-major buffer is the flat payload.
"""
from typing import Sequence

import numpy as np

from apps.tensor_core.exceptions import NonFiniteError, ShapeMismatchError

DenseTensor = np.ndarray

DTYPE = np.float64


def as_tensor(values, shape: Sequence[int] = None) -> DenseTensor:
    """
    Build a DenseTensor from nested values or a flat payload.

    Args:
        values: Nested sequence, array, or flat payload.
        shape: Optional shape; when given, `values` is read as a flat
            row-major payload whose length must equal product(shape).

    Returns:
        DenseTensor: A fresh float64 array.

    Raises:
        ShapeMismatchError: If the payload length disagrees with shape.
    """
    array = np.array(values, dtype=DTYPE)
    if shape is None:
        return np.ascontiguousarray(array)

    shape = tuple(int(extent) for extent in shape)
    expected = int(np.prod(shape, dtype=np.int64))
    if array.size != expected:
        raise ShapeMismatchError(
            "payload length does not match shape", expected, array.size
        )
    return np.ascontiguousarray(array.reshape(shape))


def zeros(shape: Sequence[int]) -> DenseTensor:
    return np.zeros(tuple(shape), dtype=DTYPE)


def ensure_finite(tensor: DenseTensor, name: str = "tensor") -> DenseTensor:
    """Raise NonFiniteError if `tensor` holds NaN or Inf."""
    if not np.all(np.isfinite(tensor)):
        raise NonFiniteError(name)
    return tensor


def affine(x: DenseTensor, weight: DenseTensor, bias: DenseTensor) -> DenseTensor:
    """
    Apply x @ weight + bias over the trailing axis of x.

    einsum without path optimization accumulates each output entry in the
    same order wherever its row sits in x, so permuting the leading axes of
    x permutes the result bit for bit. BLAS kernels give no such promise.
    """
    if x.shape[-1] != weight.shape[0]:
        raise ShapeMismatchError(
            "trailing extent does not match layer input width",
            weight.shape,
            x.shape,
        )
    return np.einsum('...i,io->...o', x, weight) + bias


def sorted_sum(x: DenseTensor, axis: int) -> DenseTensor:
    """Sum along `axis` after sorting it, so the result only depends on the
    multiset of values along that axis."""
    return np.sum(np.sort(x, axis=axis), axis=axis)
