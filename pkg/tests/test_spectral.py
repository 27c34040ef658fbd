import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fbm_spectral import (
    BasisSpec,
    DomainError,
    IntegerOrderError,
    SpectralMatrix,
    SpectralVector,
    eval_poly,
    invert_matrix,
    invert_vector,
    ones_spectrum,
    power_spectrum,
    shift_power_spectrum,
    transform_function,
)
from fbm_spectral.errors import eps_total  # noqa: F401  (import smoke)
from fbm_spectral.fbm import covariance_spectrum, make_hurst

SQ3 = math.sqrt(3)


def test_transform_examples():
    np.testing.assert_allclose(transform_function(lambda t: np.ones_like(t), BasisSpec(1, 3)).coeffs,
                               [1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(transform_function(lambda t: t, BasisSpec(1, 4)).coeffs,
                               [0.5, SQ3 / 6, 0, 0], atol=1e-14)
    spec = BasisSpec(2, 4)
    np.testing.assert_allclose(transform_function(lambda t: eval_poly(2, t, spec), spec).coeffs,
                               [0, 0, 1, 0], atol=1e-14)


def test_invert_vector_examples():
    assert invert_vector(ones_spectrum(BasisSpec(4, 5)), 1.7) == pytest.approx(1.0, abs=1e-14)
    f1 = power_spectrum(1, BasisSpec(1, 2))
    assert invert_vector(f1, 0.25) == pytest.approx(0.25, abs=1e-15)
    assert invert_vector(SpectralVector(BasisSpec(1, 6), np.zeros(6)), 0.3) == 0.0
    with pytest.raises(DomainError):
        invert_vector(f1, 1.2)


def test_invert_matrix_examples():
    spec = BasisSpec(1, 3)
    m = np.zeros((3, 3))
    m[0, 0] = 1
    assert invert_matrix(SpectralMatrix(spec, m), 0.2, 0.9) == pytest.approx(1.0, abs=1e-15)
    assert invert_matrix(SpectralMatrix(spec, np.zeros((3, 3))), 0.2, 0.9) == 0.0
    S = covariance_spectrum(make_hurst(0.5), BasisSpec(1, 64))
    assert invert_matrix(S, 1.0, 1.0) == pytest.approx(1.0, abs=5e-3)
    with pytest.raises(DomainError):
        invert_matrix(S, 0.5, -0.1)


def test_power_spectrum_examples():
    np.testing.assert_allclose(power_spectrum(2, BasisSpec(1, 5)).coeffs,
                               [1 / 3, SQ3 / 6, math.sqrt(5) / 30, 0, 0], atol=1e-15)
    np.testing.assert_allclose(power_spectrum(0, BasisSpec(9, 3)).coeffs, [3, 0, 0], atol=1e-15)
    np.testing.assert_allclose(power_spectrum(0.5, BasisSpec(1, 2)).coeffs, [2 / 3, SQ3 / 7.5], rtol=1e-14)


@pytest.mark.parametrize("alpha", [-0.4, -0.1, 0.3, 0.5, 1.7])
def test_power_spectrum_vs_quadrature(alpha):
    T = 1.3
    spec = BasisSpec(T, 32)
    F = power_spectrum(alpha, spec).coeffs
    mp.mp.dps = 30
    expected = []
    for i in range(32):
        f = lambda t: t**alpha * mp.legendre(i, 2 * t / T - 1) * mp.sqrt((2 * i + 1) / mp.mpf(T))  # noqa: E731
        expected.append(float(mp.quad(f, mp.linspace(0, T, 9))))
    mp.mp.dps = 80
    np.testing.assert_allclose(F, expected, atol=1e-9, rtol=0)


def test_power_spectrum_vs_explicit_sum():
    for alpha in (-0.45, 0.3, 2.5):
        F = power_spectrum(alpha, BasisSpec(2.0, 40)).coeffs
        exact = [float(oracles.power_coeff(alpha, i, 2)) for i in range(40)]
        np.testing.assert_allclose(F, exact, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_integer_sparsity(n):
    F = power_spectrum(n, BasisSpec(1.7, 20)).coeffs
    assert np.all(F[n + 1:] == 0.0)
    assert np.all(F[: n + 1] != 0.0)


def test_sign_pattern():
    alpha = 1.4
    F = power_spectrum(alpha, BasisSpec(1, 30)).coeffs
    tail = F[math.ceil(alpha):]
    assert np.all(np.sign(tail[1:]) == -np.sign(tail[:-1]))


def test_power_spectrum_domain():
    with pytest.raises(DomainError):
        power_spectrum(-0.5, BasisSpec(1, 3))


def test_shift_examples():
    spec = BasisSpec(1, 6)
    assert shift_power_spectrum(power_spectrum(0.5, spec), 0.5, 1)[0] == pytest.approx(0.4, rel=1e-15)
    assert shift_power_spectrum(power_spectrum(0, BasisSpec(1, 1)), 0, 1)[0] == pytest.approx(0.5, rel=1e-15)
    np.testing.assert_allclose(
        shift_power_spectrum(power_spectrum(0.3, BasisSpec(2, 40)), 0.3, 2).coeffs,
        power_spectrum(2.3, BasisSpec(2, 40)).coeffs,
        rtol=1e-12, atol=1e-12,
    )


def test_shift_refuses_integer_zero_denominator():
    with pytest.raises(IntegerOrderError):
        shift_power_spectrum(power_spectrum(0, spec := BasisSpec(1, 4)), 0, 1)
    del spec


def test_parseval_growth():
    f = lambda t: np.exp(np.sin(3 * t))  # noqa: E731
    T = 2.0
    t, w = oracles.gl(400, 0, T)
    norm = math.sqrt(np.sum(w * f(t) ** 2))
    prev = 0.0
    for L in (1, 2, 4, 8, 16, 32):
        n = np.linalg.norm(transform_function(f, BasisSpec(T, L)).coeffs)
        assert prev <= n + 1e-14
        assert n <= norm + 1e-9
        prev = n


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=8), st.floats(0.2, 5), st.integers(0, 4))
def test_round_trip_polynomials(coefs, T, extra):
    d = len(coefs) - 1
    spec = BasisSpec(T, d + 1 + extra)
    p = np.polynomial.Polynomial(coefs, domain=[0, T], window=[-1, 1])
    v = transform_function(p, spec)
    ts = np.random.default_rng(1).uniform(0, T, 20)
    np.testing.assert_allclose(invert_vector(v, ts), p(ts), atol=1e-9 * max(1, max(map(abs, coefs))) * 2**d)


def test_immutable():
    v = power_spectrum(0.5, BasisSpec(1, 3))
    with pytest.raises(ValueError):
        v.coeffs[0] = 1.0
