"""Right-hand-side descriptions: potential, power nonlinearity, nonlocal
convolution, rotation, and the 2D dipolar interaction potential."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .spectral import (
    REAL_TOL,
    ComplexField,
    KernelSymbol,
    SpectralGrid,
    convolve_arrays,
    gradient_arrays,
)

__all__ = [
    "ModelSpec",
    "harmonic_potential",
    "apply_rotation",
    "rotation_arrays",
    "dipolar_psi",
    "dipolar_symbol",
    "nonlinear_density",
    "cubic_quintic_model",
]


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of the equation

        i dphi/dt = (-1/2 Delta + V + beta |phi|^(2 sigma)
                     + lam (U * |phi|^2) - omega L) phi.

    ``kernel`` is the Fourier symbol of U; ``potential`` is V sampled on the
    grid.  The cubic-quintic parameters (alpha1, alpha2) of the nonlocal
    optics model map onto lam = -alpha1, beta = -alpha2 with sigma = 2.
    """

    beta: float = 0.0
    sigma: int = 1
    lam: float = 0.0
    kernel: Optional[KernelSymbol] = None
    potential: Optional[NDArray[np.float64]] = None
    omega: float = 0.0
    dipole_axis: Optional[tuple[float, float, float]] = None

    def __post_init__(self) -> None:
        if not (isinstance(self.sigma, (int, np.integer)) and self.sigma >= 1):
            raise ValueError(f"sigma must be a positive integer, got {self.sigma}")
        if self.lam != 0.0 and self.kernel is None:
            raise ValueError("a kernel is required when lam != 0")
        if self.dipole_axis is not None:
            n = np.asarray(self.dipole_axis, dtype=float)
            if abs(np.linalg.norm(n) - 1.0) > 1e-12:
                raise ValueError("dipole_axis must have unit norm")


def harmonic_potential(grid: SpectralGrid, gx1: float, gx2: float) -> NDArray[np.float64]:
    """Trap potential V(x) = (gx1^2 x1^2 + gx2^2 x2^2) / 2 on a 2D grid."""
    if grid.dim != 2:
        raise ValueError("harmonic_potential requires a 2D grid")
    x1, x2 = grid.meshgrid()
    return 0.5 * (gx1**2 * x1**2 + gx2**2 * x2**2)


def rotation_arrays(grid: SpectralGrid, values: NDArray) -> NDArray[np.complex128]:
    """Angular-momentum operator L = -i (x1 d/dx2 - x2 d/dx1) on a bare array."""
    if grid.dim != 2:
        raise ValueError("the rotation operator requires a 2D grid")
    x1, x2 = grid.meshgrid()
    d1, d2 = gradient_arrays(grid, values)
    return -1j * (x1 * d2 - x2 * d1)


def apply_rotation(f: ComplexField) -> ComplexField:
    """L applied to a field; derivatives spectral, coordinates pointwise."""
    if f.space != "physical":
        raise ValueError("apply_rotation expects a physical-space field")
    return ComplexField(f.grid, rotation_arrays(f.grid, f.values), "physical")


def dipolar_symbol(
    grid: SpectralGrid, axis: tuple[float, float, float]
) -> NDArray[np.float64]:
    """Fused Fourier multiplier of the 2D dipolar operator.

    Composes the symbols of the directional second derivative along the
    in-plane dipole component (-(n_perp . xi)^2), the Laplacian (-|xi|^2)
    and the 2D Coulomb kernel (1/|xi|):

        S(xi) = (3/2) ((n_perp . xi)^2 - n3^2 |xi|^2) / |xi|,   S(0) = 0.
    """
    if grid.dim != 2:
        raise ValueError("dipolar_symbol requires a 2D grid")
    n = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError("dipole axis must have unit norm")
    xi1, xi2 = grid.wavenumber_mesh()
    xi2_abs = xi1**2 + xi2**2
    nperp_dot_xi = n[0] * xi1 + n[1] * xi2
    with np.errstate(invalid="ignore", divide="ignore"):
        sym = 1.5 * (nperp_dot_xi**2 - n[2] ** 2 * xi2_abs) / np.sqrt(xi2_abs)
    sym[xi2_abs == 0] = 0.0
    return sym


def dipolar_psi(
    grid: SpectralGrid, density: NDArray, axis: tuple[float, float, float]
) -> NDArray[np.float64]:
    """Dipolar interaction potential psi for a real density on a 2D grid."""
    density = np.asarray(density)
    scale = np.max(np.abs(density)) if density.size else 0.0
    if scale > 0 and np.max(np.abs(np.imag(density))) > REAL_TOL * scale:
        raise ValueError("density must be real valued")
    kernel = KernelSymbol("dipolar", 0.0, dipolar_symbol(grid, axis))
    return convolve_arrays(grid, kernel, np.real(density))


def nonlinear_density(phi: NDArray, sigma: int) -> NDArray[np.float64]:
    """Pointwise |phi|^(2 sigma)."""
    rho = np.abs(phi) ** 2
    return rho**sigma


def cubic_quintic_model(kernel: KernelSymbol, alpha1: float, alpha2: float) -> ModelSpec:
    """Nonlocal cubic / local quintic optics model as a ModelSpec.

    The optics convention writes i d/dt phi = -(1/2 Delta + alpha1 U*|phi|^2
    + alpha2 |phi|^4) phi, i.e. lam = -alpha1, beta = -alpha2, sigma = 2.
    """
    return ModelSpec(beta=-alpha2, sigma=2, lam=-alpha1, kernel=kernel)
