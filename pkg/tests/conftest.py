"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from gpesolve import ComplexField, make_grid
from gpesolve.spectral import SpectralGrid


def smooth_field(grid: SpectralGrid, seed: int, n_modes: int = 6) -> ComplexField:
    """Random band-limited complex field: a handful of low Fourier modes with
    decaying amplitudes, O(1) in magnitude.  Periodic and spectrally exact."""
    rng = np.random.default_rng(seed)
    coeffs = np.zeros(grid.shape, dtype=np.complex128)
    idx = np.ix_(*[
        np.concatenate([np.arange(n_modes), np.arange(J - n_modes, J)])
        for J in grid.modes
    ])
    block = rng.normal(size=(2 * n_modes,) * grid.dim) + 1j * rng.normal(
        size=(2 * n_modes,) * grid.dim
    )
    decay = np.ones((2 * n_modes,) * grid.dim)
    for ax in range(grid.dim):
        k = np.concatenate([np.arange(n_modes), np.arange(n_modes, 0, -1)])
        shape = [1] * grid.dim
        shape[ax] = 2 * n_modes
        decay = decay * np.exp(-0.5 * k.reshape(shape))
    coeffs[idx] = block * decay
    values = grid.ifft(coeffs)
    values /= max(np.max(np.abs(values)), 1e-300)
    return ComplexField(grid, values, "physical")


def smooth_real_density(grid: SpectralGrid, seed: int, n_modes: int = 6):
    """Random band-limited strictly positive real density, O(1)."""
    f = smooth_field(grid, seed, n_modes)
    rho = np.abs(f.values) ** 2
    return rho / max(np.max(rho), 1e-300) + 0.1


def grid1d(extent: float = 20.0, modes: int = 128) -> SpectralGrid:
    return make_grid(1, extent, modes)


def grid2d(extent: float = 16.0, modes: int = 32) -> SpectralGrid:
    return make_grid(2, extent, modes)


def l2_norm(grid: SpectralGrid, v) -> float:
    return float(np.sqrt(grid.cell_volume * np.sum(np.abs(v) ** 2)))
