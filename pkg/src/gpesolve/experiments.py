"""Initial data builders and the registry of canned experiments."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .spectral import ComplexField, SpectralGrid

__all__ = [
    "gaussian_initial",
    "soliton_width_rootfind",
    "tanh_pair_initial",
    "vortex_initial",
    "gaussian_vortex_initial",
    "EXPERIMENTS",
    "experiment_config",
    "list_experiments",
]


def gaussian_initial(grid: SpectralGrid, width: float = 1.0) -> ComplexField:
    """1D Gaussian exp(-x^2 / width) (width = 1 gives exp(-x^2))."""
    if grid.dim != 1:
        raise ValueError("gaussian_initial is 1D")
    (x,) = grid.meshgrid()
    return ComplexField(grid, np.exp(-(x**2) / width).astype(np.complex128))


def _width_equation(D: float, mu: float, alpha2: float) -> float:
    z = D * mu
    coth = np.cosh(z) / np.sinh(z)
    csch2 = 1.0 / np.sinh(z) ** 2
    return coth / z * (1.0 / D**2 - mu**2 * csch2) - (11.0 / 15.0) * (
        2.0 * alpha2 / (3.0 * D**2)
    ) - 1.0 / 3.0


def soliton_width_rootfind(
    mu: float,
    alpha2: float,
    bracket: tuple[float, float] = (1e-3, 50.0),
    scan_points: int = 20000,
    tol: float = 1e-12,
) -> float:
    """Positive root D of the dark-soliton width equation.

    A dense scan of the bracket locates the first sign change, then
    bisection refines it to ``tol``.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    ds = np.linspace(bracket[0], bracket[1], scan_points)
    vals = np.array([_width_equation(d, mu, alpha2) for d in ds])
    sign_change = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
    if sign_change.size == 0:
        raise ValueError(
            f"no sign change of the width equation in {bracket} "
            f"(range of values: [{vals.min():.3g}, {vals.max():.3g}])"
        )
    lo, hi = float(ds[sign_change[0]]), float(ds[sign_change[0] + 1])
    flo = _width_equation(lo, mu, alpha2)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = _width_equation(mid, mu, alpha2)
        if fmid == 0.0:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tanh_pair_initial(grid: SpectralGrid, D: float, x0: float = 1.0) -> ComplexField:
    """Two-soliton profile tanh(D(x - x0)) tanh(D(x + x0))."""
    if grid.dim != 1:
        raise ValueError("tanh_pair_initial is 1D")
    (x,) = grid.meshgrid()
    vals = np.tanh(D * (x - x0)) * np.tanh(D * (x + x0))
    return ComplexField(grid, vals.astype(np.complex128))


def vortex_initial(grid: SpectralGrid, A: float, m: int) -> ComplexField:
    """Vortex beam A r^m exp(-r^2/2) exp(i m phi) on a 2D grid."""
    if grid.dim != 2:
        raise ValueError("vortex_initial is 2D")
    if not (isinstance(m, (int, np.integer)) and m >= 0):
        raise ValueError("topological charge m must be a nonnegative integer")
    x1, x2 = grid.meshgrid()
    r = np.sqrt(x1**2 + x2**2)
    phase = np.exp(1j * m * np.arctan2(x2, x1))
    return ComplexField(grid, A * r**m * np.exp(-(r**2) / 2.0) * phase)


def gaussian_vortex_initial(grid: SpectralGrid, m: int = 1) -> ComplexField:
    """Unit-mass Gaussian vortex r^m exp(-r^2/2) exp(i m phi)."""
    f = vortex_initial(grid, 1.0, m)
    norm2 = grid.cell_volume * np.sum(np.abs(f.values) ** 2)
    f.values /= np.sqrt(norm2)
    return f


# Canned reproductions of the benchmark experiments, as plain config dicts
# consumable by config.from_dict.  Kept as dicts so `describe` can dump them
# and users can copy them into files.

_QUINTIC = {
    "grid": {"dim": 1, "extents": [60.0], "modes": [8192]},
    "model": {"beta": -1.0, "sigma": 2},
    "scheme": "relaxation",
    "dt": 0.5 / 512,
    "t_final": 0.5,
    "init": {"type": "gaussian"},
}

_SEPTIC = {
    "grid": {"dim": 1, "extents": [60.0], "modes": [8192]},
    "model": {"beta": -1.0, "sigma": 3},
    "scheme": "relaxation",
    "dt": 0.5 / 512,
    "t_final": 0.5,
    "init": {"type": "gaussian"},
}


def _dark_soliton(alpha2: float, mu: float) -> dict:
    return {
        "grid": {"dim": 1, "extents": [512.0 * np.pi], "modes": [16384]},
        "model": {
            "alpha1": -1.0,
            "alpha2": alpha2,
            "kernel": {"kind": "box", "mu": mu},
        },
        "scheme": "generalized-relaxation",
        "dt": 5e-3,
        "t_final": 30.0,
        "init": {"type": "tanh-pair", "mu": mu, "alpha2": alpha2, "x0": 1.0},
    }


_VORTEX = {
    "grid": {"dim": 2, "extents": [16.0, 16.0], "modes": [256, 256]},
    "model": {
        "alpha1": 1.0,
        "alpha2": -0.02,
        "kernel": {"kind": "gaussian", "mu": 0.4},
    },
    "scheme": "generalized-relaxation",
    "dt": 5e-3,
    "t_final": 10.0,
    "init": {"type": "vortex", "amplitude": 5.8, "charge": 1},
}

_LAMBDA_DIP = 175.0
_DIPOLAR = {
    "grid": {"dim": 2, "extents": [32.0, 32.0], "modes": [256, 256]},
    "model": {
        "beta": (250.0 - _LAMBDA_DIP) * float(np.sqrt(5.0 / np.pi)),
        "sigma": 1,
        "lam": _LAMBDA_DIP,
        "omega": 0.97,
        "kernel": {"kind": "dipolar", "axis": [0.5, float(np.sqrt(3.0) / 2.0), 0.0]},
        "potential": {"type": "harmonic", "gx1": 1.0, "gx2": 1.0},
    },
    "scheme": "generalized-relaxation",
    "dt": 1e-3,
    # prose says T=15 but frames run to t=20; exposed as a parameter
    "t_final": 20.0,
    "init": {"type": "gaussian-vortex", "charge": 1},
}

EXPERIMENTS: dict[str, dict] = {
    "quintic-benchmark": _QUINTIC,
    "septic-benchmark": _SEPTIC,
    "dark-solitons-defocusing-narrow": _dark_soliton(-0.5, 0.5),
    "dark-solitons-defocusing-wide": _dark_soliton(-0.5, 2.5),
    "dark-solitons-focusing-narrow": _dark_soliton(0.1, 0.5),
    "dark-solitons-focusing-wide": _dark_soliton(0.1, 2.5),
    "vortex-2d": _VORTEX,
    "dipolar-bec": _DIPOLAR,
}

_DESCRIPTIONS = {
    "quintic-benchmark": "1D quintic NLS (sigma=2, beta=-1), Gaussian datum, box [-30,30], energy-error benchmark",
    "septic-benchmark": "1D septic NLS (sigma=3, beta=-1), Gaussian datum, box [-30,30], energy-error benchmark",
    "dark-solitons-defocusing-narrow": "nonlocal cubic-quintic dark solitons, alpha2=-0.5, kernel width mu=0.5",
    "dark-solitons-defocusing-wide": "nonlocal cubic-quintic dark solitons, alpha2=-0.5, mu=2.5 (breathing pair)",
    "dark-solitons-focusing-narrow": "nonlocal cubic-quintic dark solitons, alpha2=0.1, mu=0.5",
    "dark-solitons-focusing-wide": "nonlocal cubic-quintic dark solitons, alpha2=0.1, mu=2.5",
    "vortex-2d": "2D nonlocal cubic-quintic vortex beam, Gaussian kernel mu=0.4, 256^2 modes",
    "dipolar-bec": "2D rotating dipolar BEC with harmonic trap, Omega=0.97, lambda=175",
}


def list_experiments() -> list[tuple[str, str]]:
    return [(name, _DESCRIPTIONS[name]) for name in EXPERIMENTS]


def experiment_config(name: str) -> dict:
    """Deep-copied config dict for a canned experiment."""
    import copy

    if name not in EXPERIMENTS:
        raise KeyError(
            f"unknown experiment {name!r}; known: {', '.join(EXPERIMENTS)}"
        )
    return copy.deepcopy(EXPERIMENTS[name])
