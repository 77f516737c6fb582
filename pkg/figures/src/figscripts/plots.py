"""The figure kinds.

Each renderer takes the input paths and an output path and writes one image.
Log-scale kinds refuse non-positive data with a clear message instead of
letting matplotlib drop points silently.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import InputError, read_diagnostics_csv, read_snapshot, read_sweep_csv

__all__ = ["PlotError", "PLOT_KINDS", "render"]


class PlotError(ValueError):
    """The requested figure cannot be drawn from the given inputs."""


def _require_positive(values: np.ndarray, what: str) -> None:
    if np.any(~np.isfinite(values)) or np.any(values <= 0.0):
        raise PlotError(
            f"log-scale axis needs strictly positive {what}; "
            f"got minimum {np.min(values):g}"
        )


def _save(fig, output: Path) -> None:
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, dpi=150, bbox_inches="tight")
    plt.close(fig)


# ------------------------------------------------------------------ kinds


def energy_convergence(inputs: Sequence[Path], output: Path) -> None:
    """Log-log energy error vs time step, one panel per sweep CSV, one curve
    per scheme, with a slope-2 guide line."""
    if not 1 <= len(inputs) <= 4:
        raise PlotError("energy-convergence takes 1 to 4 sweep CSVs (one per panel)")
    panels = [read_sweep_csv(p) for p in inputs]
    fig, axes = plt.subplots(
        1, len(panels), figsize=(5.0 * len(panels), 4.2), squeeze=False
    )
    for ax, rows, path in zip(axes[0], panels, inputs):
        sigmas = sorted({r["sigma"] for r in rows})
        for scheme in sorted({r["scheme"] for r in rows}):
            pts = sorted(
                ((r["dt"], r["energy_error"]) for r in rows if r["scheme"] == scheme)
            )
            dts = np.array([p[0] for p in pts])
            errs = np.array([p[1] for p in pts])
            _require_positive(dts, f"time steps in {path}")
            _require_positive(errs, f"energy errors of scheme {scheme!r} in {path}")
            ax.loglog(dts, errs, "o-", label=scheme)
        all_dts = np.array(sorted({r["dt"] for r in rows}))
        all_errs = np.array([r["energy_error"] for r in rows])
        anchor = np.max(all_errs)
        ax.loglog(
            all_dts,
            anchor * (all_dts / all_dts.max()) ** 2,
            "k--",
            linewidth=0.8,
            label="slope 2",
        )
        ax.set_xlabel(r"$\delta t$")
        ax.set_ylabel("relative energy error")
        ax.set_title(f"$\\sigma$ = {', '.join(str(s) for s in sigmas)}")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    _save(fig, output)


def energy_timeseries(inputs: Sequence[Path], output: Path) -> None:
    """Semilog-y relative energy error over time, one curve per diagnostics
    CSV.  The initial row (the reference point, error exactly 0) is skipped;
    any other non-positive value is rejected."""
    if not inputs:
        raise PlotError("energy-timeseries needs at least one diagnostics CSV")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for path in inputs:
        cols = read_diagnostics_csv(path)
        t = cols["time"][1:]
        err = cols["rel_energy_error"][1:]
        _require_positive(err, f"energy errors in {path}")
        ax.semilogy(t, err, label=Path(path).stem)
    ax.set_xlabel("t")
    ax.set_ylabel("relative energy error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, output)


def field_1d(inputs: Sequence[Path], output: Path) -> None:
    """Final-state intensity |phi|^2 over x, one curve per 1D snapshot."""
    if not inputs:
        raise PlotError("field-1d needs at least one snapshot")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for path in inputs:
        snap = read_snapshot(path)
        if snap.values.ndim != 1:
            raise PlotError(f"{path}: field-1d needs 1D snapshots, got {snap.values.ndim}D")
        ax.plot(snap.axis_coords(0), snap.intensity(), label=f"t = {snap.time:g}")
    ax.set_xlabel("x")
    ax.set_ylabel(r"$|\varphi|^2$")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, output)


def spacetime_1d(inputs: Sequence[Path], output: Path) -> None:
    """Space-time intensity map assembled from a series of 1D snapshots,
    ordered by their recorded times."""
    if len(inputs) < 2:
        raise PlotError("spacetime-1d needs at least two snapshots")
    snaps = sorted((read_snapshot(p) for p in inputs), key=lambda s: s.time)
    shapes = {s.values.shape for s in snaps}
    if len(shapes) != 1 or snaps[0].values.ndim != 1:
        raise PlotError("spacetime-1d needs 1D snapshots on a common grid")
    data = np.stack([s.intensity() for s in snaps])
    times = [s.time for s in snaps]
    x = snaps[0].axis_coords(0)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(x, times, data, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"$|\varphi|^2$")
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    _save(fig, output)


def heatmap_2d(inputs: Sequence[Path], output: Path) -> None:
    """Intensity heatmap of one 2D snapshot."""
    if len(inputs) != 1:
        raise PlotError("heatmap-2d takes exactly one snapshot")
    snap = read_snapshot(inputs[0])
    if snap.values.ndim != 2:
        raise PlotError(f"{inputs[0]}: heatmap-2d needs a 2D snapshot")
    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    extent = [
        snap.origins[0],
        snap.origins[0] + snap.extents[0],
        snap.origins[1],
        snap.origins[1] + snap.extents[1],
    ]
    im = ax.imshow(
        snap.intensity().T, origin="lower", extent=extent, cmap="viridis", aspect="equal"
    )
    fig.colorbar(im, ax=ax, label=r"$|\varphi|^2$")
    ax.set_xlabel(r"$x_1$")
    ax.set_ylabel(r"$x_2$")
    ax.set_title(f"t = {snap.time:g}")
    _save(fig, output)


def frame_grid(inputs: Sequence[Path], output: Path) -> None:
    """Grid of 2D intensity frames ordered by time, shared color scale."""
    if len(inputs) < 2:
        raise PlotError("frame-grid needs at least two snapshots")
    snaps = sorted((read_snapshot(p) for p in inputs), key=lambda s: s.time)
    if any(s.values.ndim != 2 for s in snaps):
        raise PlotError("frame-grid needs 2D snapshots")
    ncols = min(3, len(snaps))
    nrows = math.ceil(len(snaps) / ncols)
    vmax = max(float(np.max(s.intensity())) for s in snaps)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.2 * ncols, 3.0 * nrows), squeeze=False
    )
    for ax in axes.ravel():
        ax.axis("off")
    for ax, snap in zip(axes.ravel(), snaps):
        extent = [
            snap.origins[0],
            snap.origins[0] + snap.extents[0],
            snap.origins[1],
            snap.origins[1] + snap.extents[1],
        ]
        ax.imshow(
            snap.intensity().T,
            origin="lower",
            extent=extent,
            cmap="viridis",
            vmin=0.0,
            vmax=vmax,
            aspect="equal",
        )
        ax.set_title(f"t = {snap.time:g}", fontsize=9)
        ax.axis("on")
        ax.set_xticks([])
        ax.set_yticks([])
    _save(fig, output)


PLOT_KINDS: dict[str, Callable[[Sequence[Path], Path], None]] = {
    "energy-convergence": energy_convergence,
    "energy-timeseries": energy_timeseries,
    "field-1d": field_1d,
    "spacetime-1d": spacetime_1d,
    "heatmap-2d": heatmap_2d,
    "frame-grid": frame_grid,
}


def render(kind: str, inputs: Sequence[Path], output: Path) -> None:
    """Dispatch one plot job."""
    if kind not in PLOT_KINDS:
        raise PlotError(f"unknown plot kind {kind!r}; known: {', '.join(PLOT_KINDS)}")
    PLOT_KINDS[kind]([Path(p) for p in inputs], Path(output))
