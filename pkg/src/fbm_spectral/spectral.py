"""Spectral characteristics: coefficient arrays over the Legendre basis.

A :class:`SpectralVector` holds the ``L`` expansion coefficients of a
function on ``[0, T]``; a :class:`SpectralMatrix` holds the ``L x L``
coefficients of a two-variable function or of a linear operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, IntegerOrderError, NumericConsistencyError
from .legendre import BasisSpec, eval_basis, gauss_nodes

__all__ = [
    "SpectralMatrix",
    "SpectralVector",
    "invert_matrix",
    "invert_vector",
    "ones_spectrum",
    "power_spectrum",
    "shift_power_spectrum",
    "transform_function",
]


def _frozen(a, shape) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.shape != shape:
        raise DomainError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericConsistencyError("spectral characteristic has non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SpectralVector:
    spec: BasisSpec
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _frozen(self.coeffs, (self.spec.L,)))

    def __len__(self):
        return self.spec.L

    def __getitem__(self, i):
        return self.coeffs[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def __mul__(self, c):
        return SpectralVector(self.spec, self.coeffs * float(c))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralMatrix:
    spec: BasisSpec
    entries: np.ndarray

    def __post_init__(self):
        L = self.spec.L
        object.__setattr__(self, "entries", _frozen(self.entries, (L, L)))

    @property
    def T(self) -> SpectralMatrix:
        return SpectralMatrix(self.spec, self.entries.T)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __matmul__(self, other):
        if isinstance(other, SpectralMatrix):
            _same_spec(self.spec, other.spec)
            return SpectralMatrix(self.spec, self.entries @ other.entries)
        if isinstance(other, SpectralVector):
            _same_spec(self.spec, other.spec)
            return SpectralVector(self.spec, self.entries @ other.coeffs)
        return NotImplemented

    def __mul__(self, c):
        return SpectralMatrix(self.spec, self.entries * float(c))

    __rmul__ = __mul__


def _same_spec(a: BasisSpec, b: BasisSpec):
    if a != b:
        raise DomainError(f"basis mismatch: {a} vs {b}")


def transform_function(f, spec: BasisSpec) -> SpectralVector:
    """Project ``f`` onto the basis with ``4L``-node Gauss-Legendre quadrature.

    Intended as a reference route; closed forms are used elsewhere.
    ``f`` must accept a numpy array of times.
    """
    t, w = gauss_nodes(4 * spec.L, spec.T)
    y = np.asarray(f(t), dtype=float)
    if y.shape != t.shape:
        y = np.broadcast_to(y, t.shape)
    if not np.all(np.isfinite(y)):
        raise NumericConsistencyError("function produced non-finite samples")
    return SpectralVector(spec, (w * y) @ eval_basis(t, spec))


def invert_vector(v: SpectralVector, t):
    """Sum the truncated series ``sum_i v_i q(i, t)``."""
    out = eval_basis(t, v.spec) @ v.coeffs
    return float(out) if np.ndim(out) == 0 else out


def invert_matrix(m: SpectralMatrix, t, tau):
    """Sum ``sum_ij m_ij q(i, t) q(j, tau)``; ``t`` and ``tau`` broadcast."""
    qt = eval_basis(t, m.spec)
    qs = eval_basis(tau, m.spec)
    out = np.einsum("...i,ij,...j->...", qt, m.entries, qs)
    return float(out) if np.ndim(out) == 0 else out


def ones_spectrum(spec: BasisSpec) -> SpectralVector:
    """Coefficients of the constant function 1: ``sqrt(T) e_0``."""
    c = np.zeros(spec.L)
    c[0] = math.sqrt(spec.T)
    return SpectralVector(spec, c)


def _power_coeffs(alpha: float, L: int, T: float) -> np.ndarray:
    if not alpha > -0.5:
        raise DomainError(f"exponent must exceed -1/2, got {alpha}")
    f = np.empty(L)
    f[0] = T**alpha * math.sqrt(T) / (alpha + 1.0)
    for i in range(L - 1):
        f[i + 1] = math.sqrt((2 * i + 3) / (2 * i + 1)) * (alpha - i) / (alpha + i + 2) * f[i]
    return f


def power_spectrum(alpha: float, spec: BasisSpec) -> SpectralVector:
    """Coefficients of ``t**alpha`` from the two-term multiplicative recurrence.

    For a non-negative integer exponent the factor ``alpha - i`` vanishes at
    ``i = alpha``, so every later coefficient is exactly zero.
    """
    return SpectralVector(spec, _power_coeffs(float(alpha), spec.L, spec.T))


def shift_power_spectrum(v: SpectralVector, alpha: float, k: int) -> SpectralVector:
    """Map the coefficients of ``t**alpha`` to those of ``t**(alpha + k)``.

    Raises :class:`IntegerOrderError` when a denominator factor
    ``alpha - i + m`` vanishes; use :func:`power_spectrum` in that case.
    """
    if not alpha > -0.5:
        raise DomainError(f"exponent must exceed -1/2, got {alpha}")
    if int(k) != k or k < 1:
        raise DomainError(f"shift must be a positive integer, got {k}")
    T = v.spec.T
    out = np.array(v.coeffs, dtype=float)
    for i in range(v.spec.L):
        ratio = 1.0
        for m in range(1, int(k) + 1):
            lo = alpha - i + m
            if lo == 0.0:
                raise IntegerOrderError(
                    f"factor alpha - i + m vanishes at alpha={alpha}, i={i}, m={m}"
                )
            ratio *= T * (alpha + m) ** 2 / (lo * (alpha + i + m + 1))
        out[i] *= ratio
    return SpectralVector(v.spec, out)
