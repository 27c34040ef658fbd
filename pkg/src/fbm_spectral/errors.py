"""Exact L2 errors of the truncated covariance.

For a given ``(H, T, L)``:

* ``eps1`` is the truncation error ``||R_H - R_bar||`` from Parseval's identity,
* ``eps2`` is ``||S_bar - K K^T||_F``, the error from using a product of
  truncated factors instead of the truncation of the exact kernel,
* ``eps`` is the total, with ``eps**2 == eps1**2 + eps2**2``.

Matrix norms are Frobenius norms throughout.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, NumericConsistencyError
from .fbm import assemble_kernel, covariance_spectrum, make_hurst
from .legendre import BasisSpec
from .operators import gamma_fn

__all__ = [
    "ErrorReport",
    "convergence_rate",
    "eps1",
    "eps2",
    "eps_total",
    "error_table",
    "norm_R_squared",
    "relative_error",
    "thread_count",
]

_NEG_RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class ErrorReport:
    H: float
    T: float
    L: int
    eps: float
    eps1: float
    eps2: float
    norm_R_sq: float


def norm_R_squared(H: float, T: float = 1.0) -> float:
    """Closed-form squared L2 norm of the covariance on ``[0, T]^2``."""
    if not 0.0 < H < 1.0:
        raise DomainError(f"Hurst index must lie in (0, 1), got {H}")
    if not T > 0:
        raise DomainError(f"horizon must be positive, got {T}")
    bracket = (4 * H + 3) / ((2 * H + 1) * (4 * H + 1)) - 4 * gamma_fn(2 * H + 1) ** 2 / gamma_fn(4 * H + 3)
    return T ** (4 * H + 2) / 4 * bracket


def _truncation_radicand(H, T, S) -> tuple[float, float]:
    nR = norm_R_squared(H, T)
    r = nR - float(np.sum(S * S))
    if r < -_NEG_RADICAND_TOL * max(1.0, nR):
        raise NumericConsistencyError(f"||R||^2 - ||S||^2 = {r:.3e} is negative at H={H}, T={T}")
    return nR, r


def eps1(H: float, T: float, L: int) -> float:
    h = make_hurst(H)
    S = covariance_spectrum(h, BasisSpec(T, L)).entries
    _, r = _truncation_radicand(h.H, T, S)
    return math.sqrt(max(r, 0.0))


def eps2(H: float, T: float, L: int) -> float:
    h = make_hurst(H)
    spec = BasisSpec(T, L)
    S = covariance_spectrum(h, spec).entries
    K = assemble_kernel(h, spec).entries
    return float(np.linalg.norm(S - K @ K.T))


def eps_total(H: float, T: float, L: int) -> ErrorReport:
    h = make_hurst(H)
    spec = BasisSpec(T, L)
    S = covariance_spectrum(h, spec).entries
    K = assemble_kernel(h, spec).entries
    nR, r = _truncation_radicand(h.H, T, S)
    d2 = float(np.sum((S - K @ K.T) ** 2))
    e1 = math.sqrt(max(r, 0.0))
    e2 = math.sqrt(d2)
    e = math.sqrt(max(nR - float(np.sum(S * S)) + d2, 0.0))
    if abs(e * e - (e1 * e1 + e2 * e2)) > 1e-12 * max(e * e, _NEG_RADICAND_TOL):
        raise NumericConsistencyError(f"eps^2 != eps1^2 + eps2^2 at H={H}, L={L}")
    return ErrorReport(h.H, spec.T, spec.L, e, e1, e2, nR)


def relative_error(report: ErrorReport) -> float:
    """``eps / ||R_H||``."""
    return report.eps / math.sqrt(report.norm_R_sq)


def thread_count() -> int:
    """Worker threads from ``FBM_SPECTRAL_THREADS`` (0 or unset: automatic)."""
    raw = os.environ.get("FBM_SPECTRAL_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"FBM_SPECTRAL_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise DomainError("FBM_SPECTRAL_THREADS must be non-negative")
    return n or min(8, os.cpu_count() or 1)


def error_table(H_list, L_list, T: float = 1.0, threads: int | None = None) -> list[list[ErrorReport]]:
    """Reports on a row-per-``H``, column-per-``L`` grid."""
    H_list, L_list = list(H_list), list(L_list)
    if not H_list or not L_list:
        raise DomainError("error_table needs non-empty H and L lists")
    cells = [(H, L) for H in H_list for L in L_list]
    workers = threads if threads is not None else thread_count()
    if workers > 1 and len(cells) > 1:
        # largest orders first keeps the pool busy
        order = sorted(range(len(cells)), key=lambda k: -cells[k][1])
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = dict(zip(order, pool.map(lambda k: eps_total(cells[k][0], T, cells[k][1]), order)))
        flat = [done[k] for k in range(len(cells))]
    else:
        flat = [eps_total(H, T, L) for H, L in cells]
    n = len(L_list)
    return [flat[r * n:(r + 1) * n] for r in range(len(H_list))]


def convergence_rate(L_list, eps_list=None, *, H: float | None = None, T: float = 1.0) -> float:
    """Negated least-squares slope of ``log eps`` against ``log L``.

    Pass ``eps_list`` directly, or ``H`` (and ``T``) to compute the errors.
    Returns ``nan`` when the errors are constant, since no rate is defined.
    """
    L = np.asarray(list(L_list), dtype=float)
    if L.size < 3:
        raise DomainError("convergence_rate needs at least three orders")
    if eps_list is None:
        if H is None:
            raise DomainError("give either eps_list or H")
        eps_list = [eps_total(H, T, int(n)).eps for n in L]
    e = np.asarray(list(eps_list), dtype=float)
    if e.shape != L.shape or np.any(e <= 0):
        raise DomainError("errors must be positive and match the orders")
    if np.all(e == e[0]):
        return math.nan
    x = np.log(L) - np.log(L).mean()
    y = np.log(e) - np.log(e).mean()
    return float(-(x @ y) / (x @ x))
