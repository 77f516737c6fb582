"""Periodic-box spectral core: grids, Fourier transforms, differential
operators and kernel-symbol convolution.

The transform normalization is fixed once here: the forward transform of a
field sampled on the box carries the 1/volume factor (so a constant field c
has zero-mode coefficient c), and the inverse transform is the plain
synthesis sum.  All other modules treat the transforms as opaque.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "SpectralGrid",
    "ComplexField",
    "KernelSymbol",
    "make_grid",
    "fft_forward",
    "fft_inverse",
    "apply_laplacian",
    "apply_gradient",
    "spectral_convolve",
    "box_kernel",
    "gaussian_kernel",
    "coulomb2d_kernel",
]

#: tolerance for flagging a "real" field with too much imaginary content
REAL_TOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform periodic grid on a d-dimensional box (d in {1, 2}).

    Nodes along each axis are x_j = x_left + j*dx, j = 0..J-1 (the periodic
    endpoint is dropped).  Wavenumbers are 2*pi/extent * {-J/2, ..., J/2-1},
    stored in FFT layout.
    """

    dim: int
    extents: tuple[float, ...]
    modes: tuple[int, ...]
    origins: tuple[float, ...]
    node_coords: tuple[NDArray[np.float64], ...] = field(repr=False)
    wavenumbers: tuple[NDArray[np.float64], ...] = field(repr=False)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.modes

    @property
    def dx(self) -> tuple[float, ...]:
        return tuple(L / J for L, J in zip(self.extents, self.modes))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.dx))

    @property
    def box_volume(self) -> float:
        return float(np.prod(self.extents))

    def meshgrid(self) -> tuple[NDArray[np.float64], ...]:
        """Node coordinate arrays broadcast to the full grid shape."""
        return tuple(np.meshgrid(*self.node_coords, indexing="ij"))

    def wavenumber_mesh(self) -> tuple[NDArray[np.float64], ...]:
        """Wavenumber arrays (FFT layout) broadcast to the full grid shape."""
        return tuple(np.meshgrid(*self.wavenumbers, indexing="ij"))

    def abs_xi_squared(self) -> NDArray[np.float64]:
        """|xi|^2 on the spectral grid."""
        mus = self.wavenumber_mesh()
        return sum(mu**2 for mu in mus)

    # Low-level transforms operating on bare arrays.  The phase factor
    # accounts for the box origin so that a mode e^{i k x} on the box has
    # coefficient exactly 1 at xi = k.
    def _phase(self) -> NDArray[np.complex128]:
        mus = self.wavenumber_mesh()
        arg = sum(x0 * mu for x0, mu in zip(self.origins, mus))
        return np.exp(-1j * arg)

    def fft(self, values: NDArray) -> NDArray[np.complex128]:
        """Forward transform (analysis, carries the 1/volume factor)."""
        n = float(np.prod(self.modes))
        return np.fft.fftn(values) / n * self._phase()

    def ifft(self, coeffs: NDArray) -> NDArray[np.complex128]:
        """Inverse transform (plain synthesis sum)."""
        n = float(np.prod(self.modes))
        return np.fft.ifftn(coeffs / self._phase()) * n


def make_grid(
    dim: int,
    extents: float | Sequence[float],
    modes: int | Sequence[int],
    origins: Optional[Sequence[float]] = None,
) -> SpectralGrid:
    """Build a periodic grid.

    ``extents`` is the box length per axis, ``modes`` the number of Fourier
    modes per axis (a power of two, >= 8).  By default the box is centered at
    the origin; pass ``origins`` for the left endpoint of each axis.
    """
    if dim not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    ext = tuple(float(e) for e in (extents if isinstance(extents, Sequence) else [extents] * dim))
    J = tuple(int(j) for j in (modes if isinstance(modes, Sequence) else [modes] * dim))
    if len(ext) != dim or len(J) != dim:
        raise ValueError("extents/modes length must match dim")
    for e in ext:
        if e <= 0:
            raise ValueError(f"extents must be positive, got {e}")
    for j in J:
        if j < 8 or not _is_power_of_two(j):
            raise ValueError(f"modes must be a power of two >= 8, got {j}")
    if origins is None:
        orig = tuple(-e / 2 for e in ext)
    else:
        orig = tuple(float(o) for o in origins)
        if len(orig) != dim:
            raise ValueError("origins length must match dim")
    coords = tuple(
        o + (e / j) * np.arange(j, dtype=np.float64) for o, e, j in zip(orig, ext, J)
    )
    wavenums = tuple(
        2.0 * np.pi / e * np.fft.fftfreq(j, d=1.0 / j) for e, j in zip(ext, J)
    )
    return SpectralGrid(dim, ext, J, orig, coords, wavenums)


@dataclass
class ComplexField:
    """Complex-valued state sampled on a SpectralGrid.

    ``space`` records whether ``values`` currently hold nodal samples
    ("physical") or Fourier coefficients ("spectral").
    """

    grid: SpectralGrid
    values: NDArray[np.complex128]
    space: Literal["physical", "spectral"] = "physical"

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"field shape {self.values.shape} does not match grid {self.grid.shape}"
            )

    def copy(self) -> "ComplexField":
        return ComplexField(self.grid, self.values.copy(), self.space)


def fft_forward(f: ComplexField) -> ComplexField:
    if f.space != "physical":
        raise ValueError("fft_forward expects a physical-space field")
    return ComplexField(f.grid, f.grid.fft(f.values), "spectral")


def fft_inverse(f: ComplexField) -> ComplexField:
    if f.space != "spectral":
        raise ValueError("fft_inverse expects a spectral-space field")
    return ComplexField(f.grid, f.grid.ifft(f.values), "physical")


def _apply_symbol(grid: SpectralGrid, values: NDArray, symbol: NDArray) -> NDArray[np.complex128]:
    return grid.ifft(symbol * grid.fft(values))


def apply_laplacian(f: ComplexField) -> ComplexField:
    """Laplacian via the Fourier symbol -|xi|^2 (callers add the -1/2)."""
    if f.space != "physical":
        raise ValueError("apply_laplacian expects a physical-space field")
    out = _apply_symbol(f.grid, f.values, -f.grid.abs_xi_squared())
    return ComplexField(f.grid, out, "physical")


def apply_gradient(f: ComplexField, axis: int = 0) -> ComplexField:
    """Spectral partial derivative along ``axis`` (symbol i*mu_k)."""
    if f.space != "physical":
        raise ValueError("apply_gradient expects a physical-space field")
    if not 0 <= axis < f.grid.dim:
        raise ValueError(f"axis {axis} out of range for dim {f.grid.dim}")
    mu = f.grid.wavenumber_mesh()[axis]
    out = _apply_symbol(f.grid, f.values, 1j * mu)
    return ComplexField(f.grid, out, "physical")


def gradient_arrays(grid: SpectralGrid, values: NDArray) -> list[NDArray[np.complex128]]:
    """All partial derivatives of a bare array, one per axis."""
    coeffs = grid.fft(values)
    mus = grid.wavenumber_mesh()
    return [grid.ifft(1j * mu * coeffs) for mu in mus]


@dataclass(frozen=True)
class KernelSymbol:
    """Fourier multiplier implementing convolution with a kernel U.

    ``symbol_values`` hold the analytic Fourier integral of U evaluated on
    the grid wavenumbers (real and even since U is real and symmetric).
    """

    kind: str
    width: float
    symbol_values: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        if np.max(np.abs(np.imag(self.symbol_values))) > 0:
            raise ValueError("kernel symbol must be real")


def _sinc(z: NDArray[np.float64]) -> NDArray[np.float64]:
    # np.sinc is sin(pi z)/(pi z); we want sin(z)/z.
    return np.sinc(z / np.pi)


def box_kernel(grid: SpectralGrid, mu: float) -> KernelSymbol:
    """Normalized box kernel of half-width mu: symbol prod_i sin(mu xi_i)/(mu xi_i)."""
    if mu <= 0:
        raise ValueError("kernel width must be positive")
    mus = grid.wavenumber_mesh()
    sym = np.ones(grid.shape, dtype=np.float64)
    for xi in mus:
        sym = sym * _sinc(mu * xi)
    return KernelSymbol("box", mu, sym)


def gaussian_kernel(grid: SpectralGrid, mu: float) -> KernelSymbol:
    """Normalized Gaussian kernel of width mu: symbol exp(-mu^2 |xi|^2 / 4)."""
    if mu <= 0:
        raise ValueError("kernel width must be positive")
    sym = np.exp(-(mu**2) * grid.abs_xi_squared() / 4.0)
    return KernelSymbol("gaussian", mu, sym)


def coulomb2d_kernel(grid: SpectralGrid) -> KernelSymbol:
    """2D Coulomb kernel 1/(2*pi*|x|): symbol 1/|xi| with zero mode set to 0."""
    if grid.dim != 2:
        raise ValueError("coulomb2d kernel requires a 2D grid")
    xi2 = grid.abs_xi_squared()
    with np.errstate(divide="ignore"):
        sym = np.where(xi2 > 0, 1.0 / np.sqrt(np.where(xi2 > 0, xi2, 1.0)), 0.0)
    return KernelSymbol("coulomb2d", 0.0, sym)


def convolve_arrays(
    grid: SpectralGrid, kernel: KernelSymbol, density: NDArray
) -> NDArray[np.float64]:
    """U * density for a bare real array, returned as a real array."""
    out = grid.ifft(kernel.symbol_values * grid.fft(density))
    return np.real(out)


def spectral_convolve(kernel: KernelSymbol, density: ComplexField) -> ComplexField:
    """Periodic convolution U * density via the kernel's Fourier symbol.

    ``density`` must be real valued (imaginary part below REAL_TOL of its
    norm); the result agrees with direct quadrature of the convolution
    integral on the box.
    """
    if density.space != "physical":
        raise ValueError("spectral_convolve expects a physical-space density")
    scale = np.max(np.abs(density.values))
    if scale > 0 and np.max(np.abs(np.imag(density.values))) > REAL_TOL * scale:
        raise ValueError("density must be real valued")
    out = convolve_arrays(density.grid, kernel, np.real(density.values))
    return ComplexField(density.grid, out.astype(np.complex128), "physical")
