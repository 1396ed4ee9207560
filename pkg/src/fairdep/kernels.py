"""Kernel Gram matrices for single feature vectors, and Gram centering.

Two kernels are supported. For a length-n vector z,

    rbf:     K[i, j] = exp(-(z_i - z_j)^2 / n)
    linear:  K[i, j] = z_i * z_j

The RBF exponent is scaled by 1/n with n the sample count; there is no
free bandwidth parameter. Kernels are always evaluated per column, never
on a whole matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DataError

RBF = "rbf"
LINEAR = "linear"
KERNEL_KINDS = (RBF, LINEAR)


@dataclass(frozen=True)
class KernelSpec:
    """Choice of kernel. `kind` is one of ``"rbf"`` or ``"linear"``."""

    kind: str = RBF

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")


def gram(values, spec: KernelSpec = KernelSpec()) -> np.ndarray:
    """n x n Gram matrix of a single feature vector.

    Raises DataError on non-finite entries and ValueError for n < 2.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    n = v.size
    if n < 2:
        raise ValueError(f"kernel input needs at least 2 samples, got {n}")
    if not np.all(np.isfinite(v)):
        raise DataError("kernel input contains non-finite values")
    if spec.kind == LINEAR:
        return np.outer(v, v)
    diff = v[:, None] - v[None, :]
    return np.exp(-(diff * diff) / n)


def center(K) -> np.ndarray:
    """Doubly-centered Gram matrix H K H with H = I - ee^T/n.

    Computed without materialising H: subtract row means, column means,
    add back the grand mean. Every row and column of the result sums to
    zero (up to rounding).
    """
    K = np.asarray(K, dtype=np.float64)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {K.shape}")
    col_means = K.mean(axis=0, keepdims=True)
    row_means = K.mean(axis=1, keepdims=True)
    return K - col_means - row_means + K.mean()
