"""Shifted, normalized Legendre polynomials on ``[0, T]``.

The basis functions are

    q(i, t) = sqrt((2i + 1) / T) * P_i(2t/T - 1),

where ``P_i`` is the standard Legendre polynomial. Values are always produced
by the three-term recurrence in ``x = 2t/T - 1``; the monomial expansion is
only exposed for its coefficients.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

__all__ = [
    "BasisSpec",
    "STABLE_ORDER_LIMIT",
    "coeff_products",
    "eval_basis",
    "eval_poly",
    "gauss_nodes",
]

#: Largest order for which the operator product formulas are known to be stable.
STABLE_ORDER_LIMIT = 256


@dataclass(frozen=True)
class BasisSpec:
    """Horizon ``T`` and truncation order ``L`` (basis indices ``0..L-1``)."""

    T: float
    L: int

    def __post_init__(self):
        T = float(self.T)
        if not (math.isfinite(T) and T > 0):
            raise DomainError(f"horizon T must be positive and finite, got {self.T!r}")
        if isinstance(self.L, bool) or int(self.L) != self.L or self.L < 1:
            raise DomainError(f"order L must be a positive integer, got {self.L!r}")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "L", int(self.L))
        if self.L > STABLE_ORDER_LIMIT:
            warnings.warn(
                f"order L={self.L} exceeds {STABLE_ORDER_LIMIT}; operator "
                "accuracy beyond this order has not been characterized",
                RuntimeWarning,
                stacklevel=3,
            )

    def with_order(self, L: int) -> BasisSpec:
        return BasisSpec(self.T, L)


def _check_times(t, T: float) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("time arguments must be finite")
    if np.any(t < 0) or np.any(t > T):
        raise DomainError(f"time arguments must lie in [0, {T}]")
    return t


def _legendre_sweep(x: np.ndarray, n: int) -> np.ndarray:
    """Standard Legendre values ``P_0..P_{n-1}`` at ``x``, shape ``x.shape + (n,)``."""
    out = np.empty(x.shape + (n,))
    out[..., 0] = 1.0
    if n > 1:
        out[..., 1] = x
    for i in range(1, n - 1):
        out[..., i + 1] = ((2 * i + 1) * x * out[..., i] - i * out[..., i - 1]) / (i + 1)
    return out


def eval_basis(t, spec: BasisSpec) -> np.ndarray:
    """Evaluate ``q(0, t), ..., q(L-1, t)``.

    ``t`` may be a scalar or an array; the basis index is the trailing axis
    of the result.
    """
    t = _check_times(t, spec.T)
    x = 2.0 * t / spec.T - 1.0
    norms = np.sqrt((2.0 * np.arange(spec.L) + 1.0) / spec.T)
    return _legendre_sweep(x, spec.L) * norms


def eval_poly(i: int, t, spec: BasisSpec):
    """Evaluate the single basis function ``q(i, t)``."""
    if i < 0:
        raise DomainError(f"degree must be non-negative, got {i}")
    t = _check_times(t, spec.T)
    x = 2.0 * t / spec.T - 1.0
    p = _legendre_sweep(x, i + 1)[..., i] * math.sqrt((2 * i + 1) / spec.T)
    return float(p) if p.ndim == 0 else p


def coeff_products(i: int) -> np.ndarray:
    """Monomial coefficients ``l_ik``, ``k = 0..i``, of ``P_i(2u - 1)``.

    Uses the running product ``prod_{m<=k} (i-m+1)(i+m)/m^2`` with sign
    ``(-1)**(i-k)``, so no factorial ratios are ever formed.
    """
    if i < 0:
        raise DomainError(f"degree must be non-negative, got {i}")
    out = np.empty(i + 1)
    mag = 1.0
    out[0] = (-1.0) ** i
    for k in range(1, i + 1):
        mag *= (i - k + 1) * (i + k) / (k * k)
        out[k] = (-1.0) ** (i - k) * mag
    return out


def gauss_nodes(n: int, T: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped onto ``[0, T]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * T * (x + 1.0), 0.5 * T * w
