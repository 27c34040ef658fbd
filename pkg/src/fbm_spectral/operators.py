"""Spectral characteristics of multiplication and fractional integration operators.

Builders return :class:`~fbm_spectral.spectral.SpectralMatrix` objects over the
shifted Legendre basis:

* ``mult_matrix(alpha)``: multiplication by ``t**alpha``;
* ``inversion_matrix``: time reversal ``phi(t) -> phi(T - t)``;
* ``frac_int_left(beta)`` / ``frac_int_right(beta)``: left- and right-sided
  Riemann-Liouville integrals of order ``beta``.

Non-integer orders use product formulas whose inner sums are accumulated as
running products (no factorials, no large powers of ``T``), which keeps the
entries accurate up to at least ``L = 256``. Integer orders have vanishing
denominators in those formulas and are routed to exact constructions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DomainError
from .legendre import BasisSpec
from .spectral import SpectralMatrix, _power_coeffs

__all__ = [
    "OperatorKind",
    "frac_int_left",
    "frac_int_right",
    "gamma_fn",
    "inversion_matrix",
    "mult_matrix",
    "mult_matrix_recurrence",
    "parity_decompose",
]


def gamma_fn(x: float) -> float:
    """Gamma function for positive arguments."""
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"gamma_fn expects a positive finite argument, got {x}")
    return math.gamma(x)


def _is_nonneg_int(x: float) -> bool:
    return x >= 0 and float(x).is_integer()


def _lower_sums(order: float, L: int, squared: bool) -> np.ndarray:
    """Alternating running-product sums for the lower triangle ``i >= j``.

    Entry ``[i, j]`` holds::

        sum_{k=0..j} (-1)**(j-k) prod_{m=1..k} g(m) (j-m+1)/(order-i+m) (j+m)/(order+i+m+1)

    with ``g(m) = ((order+m)/m)**2`` for multiplication operators and
    ``(order+m)/m`` for fractional integrals.
    """
    S = np.zeros((L, L))
    rows = np.arange(L, dtype=float)
    S[:, 0] = 1.0
    for j in range(1, L):
        m = np.arange(1, j + 1, dtype=float)
        g = (order + m) / m
        if squared:
            g = g * g
        i = rows[j:, None]
        factors = g * (j - m + 1) / (order - i + m) * (j + m) / (order + i + m + 1)
        terms = np.cumprod(factors, axis=1)
        signs = np.where((j - m) % 2 == 0, 1.0, -1.0)
        S[j:, j] = (1.0 if j % 2 == 0 else -1.0) + terms @ signs
    return S


def _parity_signs(L: int) -> np.ndarray:
    idx = np.arange(L)
    return np.where((idx[:, None] + idx[None, :]) % 2 == 0, 1.0, -1.0)


def _mult_tridiagonal(n: int, T: float) -> np.ndarray:
    """Multiplication by ``t``: ``T/2`` on the diagonal plus the three-term recurrence."""
    A = np.eye(n) * (T / 2)
    i = np.arange(n - 1, dtype=float)
    off = T / 2 * (i + 1) / np.sqrt((2 * i + 1) * (2 * i + 3))
    A[i.astype(int), i.astype(int) + 1] = off
    A[i.astype(int) + 1, i.astype(int)] = off
    return A


def _banded_power(base, n: int, L: int, T: float) -> np.ndarray:
    # each factor is tridiagonal, so padding by n keeps the leading L x L block exact
    B = base(L + n, T)
    R = B
    for _ in range(n - 1):
        R = R @ B
    return np.ascontiguousarray(R[:L, :L])


def mult_matrix(alpha: float, spec: BasisSpec) -> SpectralMatrix:
    """Spectral characteristic ``A^alpha`` of multiplication by ``t**alpha``.

    Lower triangle from the stable product formula scaled by the power
    coefficients, upper triangle by symmetry. Non-negative integer exponents
    are powers of the tridiagonal matrix of multiplication by ``t``.
    """
    alpha = float(alpha)
    if not alpha > -0.5:
        raise DomainError(f"multiplier exponent must exceed -1/2, got {alpha}")
    L, T = spec.L, spec.T
    if alpha == 0.0:
        return SpectralMatrix(spec, np.eye(L))
    if _is_nonneg_int(alpha):
        return SpectralMatrix(spec, _banded_power(_mult_tridiagonal, int(alpha), L, T))
    f = _power_coeffs(alpha, L, T)
    col = np.sqrt((2.0 * np.arange(L) + 1.0) / T)
    low = np.tril(f[:, None] * col[None, :] * _lower_sums(alpha, L, squared=True))
    return SpectralMatrix(spec, low + np.tril(low, -1).T)


def mult_matrix_recurrence(alpha: float, spec: BasisSpec) -> SpectralMatrix:
    """``A^alpha`` from the five-point recurrence seeded by column 0.

    Cross-validation route only; it is not stable for large ``L``.
    """
    alpha = float(alpha)
    if not alpha > -0.5:
        raise DomainError(f"multiplier exponent must exceed -1/2, got {alpha}")
    L, T = spec.L, spec.T
    n = 2 * L
    idx = np.arange(n + 1, dtype=float)
    up = (idx + 1) / np.sqrt((2 * idx + 1) * (2 * idx + 3))
    down = np.zeros(n + 1)
    down[1:] = idx[1:] / np.sqrt((2 * idx[1:] - 1) * (2 * idx[1:] + 1))

    A = np.zeros((n, L))
    A[:, 0] = _power_coeffs(alpha, n, T) / math.sqrt(T)
    for j in range(L - 1):
        top = n - 1 - j  # rows of column j that are known
        i = np.arange(top)
        prev = A[i, j - 1] if j > 0 else 0.0
        below = np.where(i > 0, A[np.maximum(i - 1, 0), j], 0.0)
        A[i, j + 1] = (up[i] * A[i + 1, j] + down[i] * below - down[j] * prev) / up[j]
    return SpectralMatrix(spec, A[:L, :L])


def inversion_matrix(spec: BasisSpec) -> SpectralMatrix:
    """Time reversal: ``diag(1, -1, 1, ...)``."""
    return SpectralMatrix(spec, np.diag(np.where(np.arange(spec.L) % 2 == 0, 1.0, -1.0)))


def _integration_bidiagonal(n: int, T: float) -> np.ndarray:
    P = np.zeros((n, n))
    P[0, 0] = T / 2
    i = np.arange(1, n)
    off = T / (2 * np.sqrt(4.0 * i * i - 1))
    P[i, i - 1] = off
    P[i - 1, i] = -off
    return P


def _frac_int_entries(beta: float, spec: BasisSpec) -> np.ndarray:
    L, T = spec.L, spec.T
    if beta == 1.0:
        return _integration_bidiagonal(L, T)
    if _is_nonneg_int(beta):
        return _banded_power(_integration_bidiagonal, int(beta), L, T)
    f = _power_coeffs(beta, L, T)
    col = np.sqrt((2.0 * np.arange(L) + 1.0) / T) / math.gamma(beta + 1.0)
    low = np.tril(f[:, None] * col[None, :] * _lower_sums(beta, L, squared=False))
    return low + np.tril(low, -1).T * _parity_signs(L)


def frac_int_left(beta: float, spec: BasisSpec) -> SpectralMatrix:
    """Left-sided Riemann-Liouville integral ``J_{0+}^beta`` (``P^{-beta}``).

    Lower triangle from the stable product formula, upper triangle from the
    parity relation ``P_ij = (-1)**(i+j) P_ji``. ``beta == 1`` gives the
    bidiagonal integration matrix; other integers use its powers.
    """
    beta = float(beta)
    if not beta > 0:
        raise DomainError(f"integration order must be positive, got {beta}")
    return SpectralMatrix(spec, _frac_int_entries(beta, spec))


def frac_int_right(beta: float, spec: BasisSpec) -> SpectralMatrix:
    """Right-sided integral ``J_{T-}^beta``; the transpose of :func:`frac_int_left`."""
    return frac_int_left(beta, spec).T


def parity_decompose(p: SpectralMatrix, atol: float = 1e-10) -> tuple[SpectralMatrix, SpectralMatrix]:
    """Split a fractional-integration matrix into symmetric and skew parts.

    The symmetric part keeps entries with even ``i + j``, the skew part those
    with odd ``i + j``. Both are exact masks of ``p``.
    """
    E = p.entries
    scale = max(1.0, float(np.max(np.abs(E))))
    if np.max(np.abs(E - _parity_signs(p.spec.L) * E.T)) > atol * scale:
        raise ContractError("matrix does not satisfy P_ij = (-1)^(i+j) P_ji")
    even = _parity_signs(p.spec.L) > 0
    return (
        SpectralMatrix(p.spec, np.where(even, E, 0.0)),
        SpectralMatrix(p.spec, np.where(even, 0.0, E)),
    )


@dataclass(frozen=True)
class OperatorKind:
    """Tagged operator selector: ``multiply``, ``invert``, ``integrate-left``, ``integrate-right``."""

    tag: str
    order: float | None = None

    _TAGS = ("multiply", "invert", "integrate-left", "integrate-right")

    def __post_init__(self):
        if self.tag not in self._TAGS:
            raise DomainError(f"unknown operator tag {self.tag!r}")
        if self.tag == "invert":
            return
        if self.order is None:
            raise DomainError(f"operator {self.tag!r} needs an order")
        if self.tag == "multiply" and not self.order > -0.5:
            raise DomainError("multiplier exponent must exceed -1/2")
        if self.tag.startswith("integrate") and not self.order > 0:
            raise DomainError("integration order must be positive")

    def build(self, spec: BasisSpec) -> SpectralMatrix:
        if self.tag == "multiply":
            return mult_matrix(self.order, spec)
        if self.tag == "invert":
            return inversion_matrix(spec)
        if self.tag == "integrate-left":
            return frac_int_left(self.order, spec)
        return frac_int_right(self.order, spec)
