"""Kernel and covariance spectral characteristics of fractional Brownian motion."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, NotPositiveSemidefiniteError, NumericConsistencyError
from .legendre import BasisSpec
from .operators import frac_int_left, gamma_fn, mult_matrix
from .spectral import SpectralMatrix, ones_spectrum, power_spectrum

__all__ = [
    "FbmModel",
    "HurstParams",
    "Regime",
    "assemble_kernel",
    "assemble_liouville_kernel",
    "build_model",
    "cholesky_factor",
    "covariance_eval",
    "covariance_spectrum",
    "hurst_constant_forms",
    "make_hurst",
]


class Regime(enum.Enum):
    BELOW = "below"
    HALF = "half"
    ABOVE = "above"


@dataclass(frozen=True)
class HurstParams:
    H: float
    regime: Regime
    a_H: float


def hurst_constant_forms(H: float) -> dict[str, float]:
    """The normalizing constant ``a_H`` computed by every available formula.

    Keys: ``gamma`` (always), and for ``H != 1/2`` also ``pi`` and ``beta``
    (``b_H * Gamma(H + 1/2)``); for ``H > 1/2`` additionally ``beta_upper``
    (``c_H * Gamma(H - 1/2)``).
    """
    H = float(H)
    g = math.gamma
    forms = {"gamma": math.sqrt(2 * H * g(H + 0.5) * g(1.5 - H) / g(2 - 2 * H))}
    if H != 0.5:
        forms["pi"] = math.sqrt(math.pi * H * (1 - 2 * H) / (g(2 - 2 * H) * math.cos(math.pi * H)))
        beta_lo = g(1 - 2 * H) * g(H + 0.5) / g(1.5 - H)
        forms["beta"] = math.sqrt(2 * H / ((1 - 2 * H) * beta_lo)) * g(H + 0.5)
        if H > 0.5:
            beta_hi = g(2 - 2 * H) * g(H - 0.5) / g(1.5 - H)
            forms["beta_upper"] = math.sqrt(H * (2 * H - 1) / beta_hi) * g(H - 0.5)
    return forms


def make_hurst(H: float) -> HurstParams:
    """Validate ``H`` in (0, 1) and compute ``a_H``.

    Away from ``H = 1/2`` the alternative forms of the constant are evaluated
    too and must agree; close to 1/2 they lose digits to a 0/0 and are skipped.
    """
    H = float(H)
    if not 0.0 < H < 1.0:
        raise DomainError(f"Hurst index must lie in (0, 1), got {H}")
    forms = hurst_constant_forms(H)
    a = forms["gamma"]
    if abs(H - 0.5) > 1e-2:
        for name, value in forms.items():
            if abs(value - a) > 1e-10 * a:
                raise NumericConsistencyError(f"a_H forms disagree at H={H}: {name}={value}, gamma={a}")
    if H == 0.5:
        regime, a = Regime.HALF, 1.0
    else:
        regime = Regime.BELOW if H < 0.5 else Regime.ABOVE
    return HurstParams(H, regime, a)


def assemble_kernel(h: HurstParams, spec: BasisSpec) -> SpectralMatrix:
    """Truncated kernel operator as a product of four truncated factors.

    ``H < 1/2``: ``a_H P^{-2H} A^{1/2-H} P^{-(1/2-H)} A^{H-1/2}``;
    ``H > 1/2``: ``a_H P^{-1} A^{H-1/2} P^{-(H-1/2)} A^{1/2-H}``;
    ``H = 1/2``: the integration matrix ``P^{-1}`` itself.
    """
    H = h.H
    if h.regime is Regime.HALF:
        return frac_int_left(1.0, spec)
    d = H - 0.5
    if h.regime is Regime.BELOW:
        factors = (frac_int_left(2 * H, spec), mult_matrix(-d, spec),
                   frac_int_left(-d, spec), mult_matrix(d, spec))
    else:
        factors = (frac_int_left(1.0, spec), mult_matrix(d, spec),
                   frac_int_left(d, spec), mult_matrix(-d, spec))
    K = factors[0].entries @ factors[1].entries @ factors[2].entries @ factors[3].entries
    return SpectralMatrix(spec, h.a_H * K)


def assemble_liouville_kernel(h: HurstParams, spec: BasisSpec) -> SpectralMatrix:
    """Kernel of the Liouville variant: the fractional integral of order ``H + 1/2``."""
    return frac_int_left(h.H + 0.5, spec)


def covariance_spectrum(h: HurstParams, spec: BasisSpec) -> SpectralMatrix:
    """Exact truncated coefficients of the covariance ``R_H``.

    Built from the power coefficients of ``t**(2H)``, the constant function,
    and the fractional integral of order ``2H + 1``; no kernel product enters.
    """
    H = h.H
    f = power_spectrum(2 * H, spec).coeffs
    one = ones_spectrum(spec).coeffs
    P = frac_int_left(2 * H + 1, spec).entries
    g = gamma_fn(2 * H + 1)
    rank_one = np.outer(f, one)
    S = 0.5 * ((rank_one + rank_one.T) - g * (P + P.T))
    return SpectralMatrix(spec, S)


def covariance_eval(h: HurstParams | float, t, tau):
    """``R_H(t, tau) = (t^{2H} + tau^{2H} - |t - tau|^{2H}) / 2``."""
    H = h.H if isinstance(h, HurstParams) else float(h)
    t = np.asarray(t, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if np.any(t < 0) or np.any(tau < 0):
        raise DomainError("covariance arguments must be non-negative")
    e = 2 * H
    out = 0.5 * (t**e + tau**e - np.abs(t - tau) ** e)
    return float(out) if out.ndim == 0 else out


def cholesky_factor(s: SpectralMatrix, rtol: float = 1e-10) -> SpectralMatrix:
    """Lower-triangular ``C`` with ``C C^T = s`` for a PSD matrix.

    Pivots with ``|pivot| <= rtol * max|s|`` are treated as zero and their
    column is dropped, so rank-deficient inputs are accepted. A pivot below
    ``-rtol * max|s|`` raises :class:`NotPositiveSemidefiniteError`.
    """
    A = np.array(s.entries, dtype=float)
    n = A.shape[0]
    if np.max(np.abs(A - A.T)) > rtol * max(1.0, float(np.max(np.abs(A)))):
        raise NotPositiveSemidefiniteError("matrix is not symmetric")
    tol = rtol * float(np.max(np.abs(A))) if n else 0.0
    C = np.zeros_like(A)
    for j in range(n):
        pivot = A[j, j] - C[j, :j] @ C[j, :j]
        if pivot < -tol:
            raise NotPositiveSemidefiniteError(f"pivot {pivot:.3e} at column {j}")
        if pivot <= tol:
            continue
        d = math.sqrt(pivot)
        C[j, j] = d
        C[j + 1:, j] = (A[j + 1:, j] - C[j + 1:, :j] @ C[j, :j]) / d
    return SpectralMatrix(s.spec, C)


@dataclass(frozen=True, eq=False)
class FbmModel:
    """Assembled operators for one ``(H, T, L)``.

    ``kernel`` drives strong paths, ``chol`` (when built) drives weak paths.
    """

    hurst: HurstParams
    spec: BasisSpec
    kernel: SpectralMatrix
    covariance: SpectralMatrix
    chol: SpectralMatrix | None = None
    liouville: bool = False


def build_model(h: HurstParams | float, spec: BasisSpec, *, with_cholesky: bool = True,
                liouville: bool = False) -> FbmModel:
    if not isinstance(h, HurstParams):
        h = make_hurst(h)
    if liouville:
        # no closed-form covariance for this variant: keep the kernel Gram matrix
        kernel = assemble_liouville_kernel(h, spec)
        cov = SpectralMatrix(spec, kernel.entries @ kernel.entries.T)
    else:
        kernel = assemble_kernel(h, spec)
        cov = covariance_spectrum(h, spec)
    chol = cholesky_factor(cov) if with_cholesky and not liouville else None
    return FbmModel(h, spec, kernel, cov, chol, liouville)
