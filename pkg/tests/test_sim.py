import numpy as np
import pytest

from fbm_spectral import (
    BasisSpec,
    ContractError,
    DomainError,
    Mode,
    NoiseVector,
    build_model,
    draw_noise,
    eval_basis,
    power_spectrum,
    render_path,
    simulate,
    spectral_path_coeffs,
)
from fbm_spectral.spectral import SpectralVector


def test_draw_noise_deterministic_and_independent_streams():
    spec = BasisSpec(1, 16)
    a, b = draw_noise(spec, 7, 0), draw_noise(spec, 7, 0)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, draw_noise(spec, 7, 1).values)
    assert not np.array_equal(a.values, draw_noise(spec, 8, 0).values)
    with pytest.raises(ValueError):
        a.values[0] = 1.0


def test_noise_moments():
    spec = BasisSpec(1, 200)
    x = np.concatenate([draw_noise(spec, 3, s).values for s in range(100)])
    assert abs(x.mean()) < 4 / np.sqrt(x.size)
    assert abs(x.var() - 1) < 6 * np.sqrt(2 / x.size)


def test_zero_noise_gives_zero_path():
    model = build_model(0.3, BasisSpec(1, 8))
    noise = NoiseVector(model.spec, np.zeros(8), 0, 0)
    for mode in Mode:
        c = spectral_path_coeffs(model, noise, mode)
        np.testing.assert_array_equal(render_path(c, np.linspace(0, 1, 5)), 0.0)


def test_strong_half_first_noise_is_a_ramp():
    # e0 through the integration matrix yields t itself, up to the q1 truncation
    model = build_model(0.5, BasisSpec(1, 4))
    e0 = np.zeros(4)
    e0[0] = 1.0
    c = spectral_path_coeffs(model, NoiseVector(model.spec, e0, 0, 0))
    np.testing.assert_allclose(c.coeffs, power_spectrum(1, model.spec).coeffs, atol=1e-15)
    t = np.linspace(0, 1, 7)
    np.testing.assert_allclose(render_path(c, t), t, atol=1e-14)


def test_render_path_linear():
    spec = BasisSpec(2.0, 6)
    rng = np.random.default_rng(0)
    u, v = rng.normal(size=6), rng.normal(size=6)
    t = np.linspace(0, 2, 11)
    lhs = render_path(SpectralVector(spec, 2 * u + 3 * v), t)
    rhs = 2 * render_path(SpectralVector(spec, u), t) + 3 * render_path(SpectralVector(spec, v), t)
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)
    np.testing.assert_allclose(render_path(SpectralVector(spec, u), t), eval_basis(t, spec) @ u)


def test_simulate_shapes_and_determinism():
    a = simulate(0.3, L=16, grid=500, n_paths=3, seed=42)
    assert a.values.shape == (3, 500) and a.grid.shape == (500,)
    b = simulate(0.3, L=16, grid=500, n_paths=3, seed=42)
    np.testing.assert_array_equal(a.values, b.values)
    # path p only depends on (seed, p); batch size only changes BLAS rounding
    c = simulate(0.3, L=16, grid=500, n_paths=1, seed=42)
    np.testing.assert_allclose(a.values[:1], c.values, rtol=0, atol=1e-13)
    assert simulate(0.3, L=16, grid=10, n_paths=0).values.shape == (0, 10)


def test_simulate_matches_manual_pipeline():
    spec = BasisSpec(1, 12)
    model = build_model(0.7, spec)
    grid = np.array([0.1, 0.4, 0.95])
    for mode in Mode:
        s = simulate(0.7, L=12, grid=grid, n_paths=2, seed=5, mode=mode)
        for p in range(2):
            c = spectral_path_coeffs(model, draw_noise(spec, 5, p), mode)
            np.testing.assert_allclose(s.values[p], render_path(c, grid), atol=1e-13)


def test_strong_and_weak_differ():
    s = simulate(0.3, L=16, grid=50, n_paths=1, seed=1, mode="strong")
    w = simulate(0.3, L=16, grid=50, n_paths=1, seed=1, mode="weak")
    assert not np.allclose(s.values, w.values)


def test_paths_start_near_zero_and_are_centered():
    s = simulate(0.5, L=32, grid=[0.0, 0.5, 1.0], n_paths=4000, seed=11)
    assert abs(s.values[:, 1].mean()) < 4 * np.sqrt(0.5 / 4000)
    assert abs(s.values[:, 2].var() - 1.0) < 0.1
    assert np.max(np.abs(s.values[:, 0])) < 0.2 * np.max(np.abs(s.values[:, 2]))


def test_liouville_variance():
    # Var of the Riemann-Liouville process at T: T^{2H} / (2H Gamma(H+1/2)^2)
    import math
    H = 0.3
    s = simulate(H, L=64, grid=[0.5], n_paths=6000, seed=2, liouville=True)
    target = 0.5 ** (2 * H) / (2 * H * math.gamma(H + 0.5) ** 2)
    assert s.liouville
    assert abs(s.values[:, 0].var() / target - 1) < 0.1


def test_simulate_validation():
    with pytest.raises(DomainError):
        simulate(0.3, grid=0)
    with pytest.raises(DomainError):
        simulate(0.3, grid=[0.5, 0.2])
    with pytest.raises(DomainError):
        simulate(0.3, grid=[0.5, 1.5])
    with pytest.raises(DomainError):
        simulate(1.2)
    with pytest.raises(DomainError):
        simulate(0.3, n_paths=-1)
    with pytest.raises(DomainError):
        simulate(0.3, mode="weak", liouville=True)
    with pytest.raises(ValueError):
        simulate(0.3, mode="sideways")


def test_weak_needs_cholesky():
    model = build_model(0.3, BasisSpec(1, 8), with_cholesky=False)
    with pytest.raises(ContractError):
        spectral_path_coeffs(model, draw_noise(model.spec, 0), Mode.WEAK)
    with pytest.raises(ContractError):
        simulate(0.3, L=8, mode="weak", model=model)
    with pytest.raises(ContractError):
        simulate(0.4, L=8, model=model)
