"""Continuous-time sample paths from truncated spectral characteristics.

Each path ``p`` draws its white-noise coefficients from an independent
Philox stream keyed by ``(seed, p)``, maps them through the kernel (strong
mode) or the Cholesky factor of the covariance (weak mode), and sums the
resulting Legendre series on the requested grid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ContractError, DomainError
from .fbm import FbmModel, build_model, make_hurst
from .legendre import BasisSpec, eval_basis
from .spectral import SpectralVector

__all__ = [
    "Mode",
    "NoiseVector",
    "PathSample",
    "draw_noise",
    "render_path",
    "simulate",
    "spectral_path_coeffs",
]


class Mode(enum.Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True, eq=False)
class NoiseVector:
    spec: BasisSpec
    values: np.ndarray
    seed: int
    stream: int


@dataclass(frozen=True, eq=False)
class PathSample:
    grid: np.ndarray
    values: np.ndarray  # (n_paths, len(grid))
    mode: Mode
    seed: int
    hurst: float
    liouville: bool = False
    meta: dict = field(default_factory=dict)


def _generator(seed: int, stream: int) -> np.random.Generator:
    if seed < 0 or stream < 0:
        raise DomainError("seed and stream must be non-negative")
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


def draw_noise(spec: BasisSpec, seed: int, stream: int = 0) -> NoiseVector:
    """``L`` i.i.d. standard normals, a pure function of ``(seed, stream)``."""
    values = _generator(seed, stream).standard_normal(spec.L)
    values.flags.writeable = False
    return NoiseVector(spec, values, int(seed), int(stream))


def _factor(model: FbmModel, mode: Mode) -> np.ndarray:
    if Mode(mode) is Mode.STRONG:
        return model.kernel.entries
    if model.chol is None:
        raise ContractError("weak mode needs a model built with its Cholesky factor")
    return model.chol.entries


def spectral_path_coeffs(model: FbmModel, noise: NoiseVector, mode: Mode = Mode.STRONG) -> SpectralVector:
    if noise.spec != model.spec:
        raise DomainError("noise and model use different bases")
    return SpectralVector(model.spec, _factor(model, mode) @ noise.values)


def render_path(coeffs: SpectralVector, grid) -> np.ndarray:
    """Values of the truncated series at each grid time."""
    grid = np.asarray(grid, dtype=float)
    return eval_basis(grid, coeffs.spec) @ coeffs.coeffs


def simulate(H: float, T: float = 1.0, L: int = 64, grid=1000, n_paths: int = 1,
             seed: int = 0, mode: Mode | str = Mode.STRONG, liouville: bool = False,
             model: FbmModel | None = None) -> PathSample:
    """Sample ``n_paths`` paths on ``grid``.

    ``grid`` is either an explicit array of times in ``[0, T]`` or a point
    count for a uniform grid including both endpoints. The model is
    assembled once; pass ``model`` to reuse one across calls.
    """
    mode = Mode(mode)
    if liouville and mode is Mode.WEAK:
        raise DomainError("the Liouville variant is only simulated in strong mode")
    spec = BasisSpec(T, L)
    if np.ndim(grid) == 0:
        n = int(grid)
        if n < 1:
            raise DomainError("grid needs at least one point")
        grid = np.linspace(0.0, spec.T, n)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be a strictly increasing 1-D array")
    if n_paths < 0:
        raise DomainError("n_paths must be non-negative")
    h = make_hurst(H)
    if model is None:
        model = build_model(h, spec, with_cholesky=mode is Mode.WEAK, liouville=liouville)
    elif model.spec != spec or model.hurst.H != h.H or model.liouville != liouville:
        raise ContractError("supplied model does not match the requested parameters")
    factor = _factor(model, mode)
    basis = eval_basis(grid, spec)  # validates the grid range

    noise = np.empty((n_paths, L))
    for p in range(n_paths):
        noise[p] = _generator(seed, p).standard_normal(L)
    values = (noise @ factor.T) @ basis.T
    return PathSample(grid, values, mode, int(seed), h.H, liouville,
                      {"T": spec.T, "L": spec.L})
