"""Model terms: trap potential, rotation operator, dipolar interaction,
power nonlinearity and the cubic-quintic parameter mapping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpesolve import ComplexField, apply_rotation, make_grid
from gpesolve.models import (
    ModelSpec,
    cubic_quintic_model,
    dipolar_psi,
    dipolar_symbol,
    harmonic_potential,
    nonlinear_density,
    rotation_arrays,
)
from gpesolve.spectral import KernelSymbol, convolve_arrays, coulomb2d_kernel, gaussian_kernel

from conftest import grid2d, smooth_field, smooth_real_density


# ---------------------------------------------------------------- ModelSpec


def test_model_spec_validation():
    with pytest.raises(ValueError):
        ModelSpec(sigma=0)
    with pytest.raises(ValueError):
        ModelSpec(lam=1.0)  # kernel required
    with pytest.raises(ValueError):
        ModelSpec(dipole_axis=(1.0, 1.0, 0.0))  # not unit norm
    m = ModelSpec(beta=-1.0, sigma=3)
    assert m.sigma == 3 and m.kernel is None


# ---------------------------------------------------------------- potential


def test_harmonic_potential_nodal_values():
    g = make_grid(2, 16.0, 16)  # integer nodes: dx = 1, origin -8
    V = harmonic_potential(g, 1.0, 2.0)
    x1, x2 = g.meshgrid()
    assert V[(x1 == 0.0) & (x2 == 0.0)][0] == 0.0
    assert V[(x1 == 1.0) & (x2 == 1.0)][0] == pytest.approx(0.5 * (1 + 4))
    assert V[(x1 == 3.0) & (x2 == -2.0)][0] == pytest.approx(0.5 * (9 + 16))
    with pytest.raises(ValueError):
        harmonic_potential(make_grid(1, 16.0, 16), 1.0, 1.0)


# ---------------------------------------------------------------- rotation


def test_rotation_annihilates_radial_fields():
    g = grid2d(modes=64)
    x1, x2 = g.meshgrid()
    f = ComplexField(g, np.exp(-(x1**2 + x2**2) / 2).astype(complex))
    out = apply_rotation(f).values
    assert np.max(np.abs(out)) < 1e-10


def test_rotation_vortex_eigenvalue():
    # r^m e^{-r^2/2} e^{i m theta} is an eigenfunction with eigenvalue m
    g = grid2d(modes=64)
    x1, x2 = g.meshgrid()
    r2 = x1**2 + x2**2
    for m in (1, 2):
        f = ComplexField(
            g, np.sqrt(r2) ** m * np.exp(-r2 / 2) * np.exp(1j * m * np.arctan2(x2, x1))
        )
        out = apply_rotation(f).values
        assert np.max(np.abs(out - m * f.values)) < 1e-9 * max(np.max(np.abs(f.values)), 1.0)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_rotation_is_discretely_hermitian(seed):
    # multiplication by a coordinate and differentiation along the *other*
    # axis commute as matrices, so the discrete operator is exactly
    # Hermitian: <L f, h> = <f, L h> and <L f, f> is real
    g = grid2d()
    f = smooth_field(g, seed)
    h = smooth_field(g, seed + 1)
    lf = rotation_arrays(g, f.values)
    lh = rotation_arrays(g, h.values)
    lhs = np.sum(lf * np.conj(h.values))
    rhs = np.sum(f.values * np.conj(lh))
    scale = max(abs(lhs), 1.0)
    assert abs(lhs - rhs) < 1e-10 * scale
    quad = np.sum(lf * np.conj(f.values))
    assert abs(np.imag(quad)) < 1e-10 * max(abs(quad), 1.0)


def test_rotation_requires_2d():
    g = make_grid(1, 16.0, 32)
    with pytest.raises(ValueError):
        rotation_arrays(g, np.zeros(g.shape, complex))


# ---------------------------------------------------------------- dipolar


def test_dipolar_symbol_out_of_plane_axis():
    # axis n = (0,0,1): n_perp = 0, so S(xi) = -(3/2)|xi|
    g = grid2d()
    sym = dipolar_symbol(g, (0.0, 0.0, 1.0))
    xi1, xi2 = g.wavenumber_mesh()
    expected = -1.5 * np.hypot(xi1, xi2)
    assert np.max(np.abs(sym - expected)) < 1e-12
    assert sym[0, 0] == 0.0


def test_dipolar_symbol_rejects_bad_axis():
    g = grid2d()
    with pytest.raises(ValueError):
        dipolar_symbol(g, (1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        dipolar_symbol(make_grid(1, 16.0, 32), (1.0, 0.0, 0.0))


def test_dipolar_psi_single_mode():
    # a pure cosine density maps to S(k) times the same cosine
    g = grid2d()
    axis = (0.6, 0.0, 0.8)
    x1, x2 = g.meshgrid()
    k1 = 2 * np.pi / 16.0 * 3
    k2 = 2 * np.pi / 16.0 * 2
    rho = np.cos(k1 * x1 + k2 * x2)
    abs_k = np.hypot(k1, k2)
    s_k = 1.5 * ((0.6 * k1) ** 2 - 0.8**2 * abs_k**2) / abs_k
    out = dipolar_psi(g, rho, axis)
    assert np.max(np.abs(out - s_k * rho)) < 1e-10 * max(abs(s_k), 1.0)


def test_dipolar_psi_matches_composed_operators():
    # fused symbol vs. the literal composition
    # -(3/2)(d_{n_perp n_perp} - n3^2 Laplacian)(coulomb * rho)
    g = grid2d(extent=16.0, modes=64)
    axis = (0.5, np.sqrt(3.0) / 2.0, 0.0)
    rho = smooth_real_density(g, seed=11)
    fused = dipolar_psi(g, rho, axis)

    coul = convolve_arrays(g, coulomb2d_kernel(g), rho)
    xi1, xi2 = g.wavenumber_mesh()
    nperp_xi = axis[0] * xi1 + axis[1] * xi2
    dnn = np.real(g.ifft(-(nperp_xi**2) * g.fft(coul)))
    lap = np.real(g.ifft(-(xi1**2 + xi2**2) * g.fft(coul)))
    composed = -1.5 * (dnn - axis[2] ** 2 * lap)
    assert np.max(np.abs(fused - composed)) < 1e-10 * max(np.max(np.abs(composed)), 1.0)


def test_dipolar_psi_has_zero_mean():
    g = grid2d()
    rho = smooth_real_density(g, seed=4)
    out = dipolar_psi(g, rho, (1.0, 0.0, 0.0))
    assert abs(np.sum(out)) * g.cell_volume < 1e-11


def test_dipolar_psi_rejects_complex_density():
    g = grid2d()
    f = smooth_field(g, 2)
    with pytest.raises(ValueError):
        dipolar_psi(g, f.values, (1.0, 0.0, 0.0))


# ---------------------------------------------------------------- nonlinearity


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), sigma=st.integers(1, 6))
def test_nonlinear_density(seed, sigma):
    rng = np.random.default_rng(seed)
    phi = rng.normal(size=16) + 1j * rng.normal(size=16)
    out = nonlinear_density(phi, sigma)
    expected = np.abs(phi) ** (2 * sigma)
    assert np.max(np.abs(out - expected)) < 1e-12 * max(np.max(expected), 1.0)


def test_cubic_quintic_mapping():
    g = grid2d()
    kern = gaussian_kernel(g, 0.4)
    model = cubic_quintic_model(kern, alpha1=1.0, alpha2=-0.02)
    assert model.lam == -1.0
    assert model.beta == 0.02
    assert model.sigma == 2
    assert model.kernel is kern
    # the potential-like term beta rho^2 + lam U*rho equals the optics form
    # -(alpha1 U*rho + alpha2 rho^2)
    rho = smooth_real_density(g, seed=9)
    W = model.beta * rho**2 + model.lam * convolve_arrays(g, kern, rho)
    optics = -(1.0 * convolve_arrays(g, kern, rho) + (-0.02) * rho**2)
    assert np.max(np.abs(W - optics)) < 1e-13
