"""Empirical HSIC and its normalized variant, NOCCO.

For centered Gram matrices G_x = H K_x H and G_y = H K_y H:

    hsic(x, y)  = tr(K_x H K_y H) / (n - 1)^2
    nocco(x, y) = tr(R_x R_y),   R = G (G + n*eps*I)^{-1}

The regularized operator R has eigenvalues lam/(lam + n*eps) in [0, 1),
which makes nocco insensitive to the scale of the observations; eps
defaults to 1e-6. R is obtained from a Cholesky solve of the SPD matrix
G + n*eps*I, never from a general-purpose inverse.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import NumericsError
from .kernels import KernelSpec, center, gram


@dataclass(frozen=True)
class DependenceConfig:
    """Kernel choice plus the ridge eps used by the regularized operator."""

    kernel: KernelSpec = KernelSpec()
    epsilon: float = 1e-6

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def _check_pair(x, y):
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return x, y


def _canonical_indicator(v: np.ndarray) -> np.ndarray:
    """Map a 0/1 column and its complement onto one representative.

    Centered Grams of b and 1-b coincide for both kernels, so the
    dependence of an indicator is complement-invariant; routing both
    codings through the same arithmetic makes that equality exact
    instead of rounding-level. Non-indicator vectors pass through.
    """
    u = np.unique(v)
    if u.size == 2 and u[0] == 0.0 and u[1] == 1.0:
        ones = int(v.sum())
        if 2 * ones > v.size or (2 * ones == v.size and v[0] == 1.0):
            return 1.0 - v
    return v


def hsic(x, y, spec: KernelSpec = KernelSpec()) -> float:
    """Empirical HSIC of two equal-length vectors.

    tr(K_x H K_y H) equals the Frobenius inner product of the two
    centered Grams, so no matrix product is formed.
    """
    x, y = _check_pair(x, y)
    gx = center(gram(x, spec))
    gy = center(gram(y, spec))
    n = x.size
    return float(np.vdot(gx, gy)) / (n - 1) ** 2


def regularized_operator(K, epsilon: float = 1e-6) -> np.ndarray:
    """R = G (G + n*eps*I)^{-1} for G = H K H.

    G and (G + n*eps*I)^{-1} commute, so R equals the solution Z of the
    SPD system (G + n*eps*I) Z = G; Z comes from a Cholesky factorization
    and is symmetrized to scrub rounding asymmetry.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    G = center(K)
    n = G.shape[0]
    shifted = G + (n * epsilon) * np.eye(n)
    try:
        factor = linalg.cho_factor(shifted, lower=True, check_finite=False)
    except linalg.LinAlgError as exc:
        raise NumericsError(
            "centered Gram plus ridge is not positive definite; "
            "the kernel matrix is broken (non-PSD input?)"
        ) from exc
    R = linalg.cho_solve(factor, G, check_finite=False)
    return (R + R.T) / 2.0


def nocco(x, y, config: DependenceConfig = DependenceConfig()) -> float:
    """Normalized dependence tr(R_x R_y) of two equal-length vectors.

    Symmetric in (x, y), nonnegative, and bounded by min(tr R_x, tr R_y).
    0/1 indicator inputs are complement-canonicalized, so an indicator
    and its complement score identically to the last bit.
    """
    x, y = _check_pair(x, y)
    x = _canonical_indicator(x)
    y = _canonical_indicator(y)
    rx = regularized_operator(gram(x, config.kernel), config.epsilon)
    ry = regularized_operator(gram(y, config.kernel), config.epsilon)
    return float(np.vdot(rx, ry))


def nocco_against_operator(x, ry: np.ndarray, config: DependenceConfig = DependenceConfig()) -> float:
    """tr(R_x R_y) with R_y precomputed.

    Scoring many columns against one label vector reuses the label's
    operator; this is the per-column half of that loop.
    """
    x = _canonical_indicator(np.asarray(x, dtype=np.float64).ravel())
    rx = regularized_operator(gram(x, config.kernel), config.epsilon)
    if rx.shape != ry.shape:
        raise ValueError(f"operator shape mismatch: {rx.shape} vs {ry.shape}")
    return float(np.vdot(rx, ry))
