"""Spectral (Legendre-basis) representation and simulation of fractional Brownian motion."""

from .errors import ErrorReport, convergence_rate, eps1, eps2, eps_total, error_table, norm_R_squared
from .exceptions import (
    ContractError,
    DomainError,
    IntegerOrderError,
    NotPositiveSemidefiniteError,
    NumericConsistencyError,
    SpectralError,
)
from .fbm import (
    FbmModel,
    HurstParams,
    Regime,
    assemble_kernel,
    assemble_liouville_kernel,
    build_model,
    cholesky_factor,
    covariance_eval,
    covariance_spectrum,
    make_hurst,
)
from .legendre import BasisSpec, coeff_products, eval_basis, eval_poly
from .operators import (
    OperatorKind,
    frac_int_left,
    frac_int_right,
    gamma_fn,
    inversion_matrix,
    mult_matrix,
    mult_matrix_recurrence,
    parity_decompose,
)
from .sim import Mode, NoiseVector, PathSample, draw_noise, render_path, simulate, spectral_path_coeffs
from .spectral import (
    SpectralMatrix,
    SpectralVector,
    invert_matrix,
    invert_vector,
    ones_spectrum,
    power_spectrum,
    shift_power_spectrum,
    transform_function,
)

__version__ = "0.1.0"
