"""Fixtures producing real solver outputs for the figure tests.

The solver package is used only here, to generate authentic inputs; the
figure code itself never imports it.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import pytest

from gpesolve import ComplexField, make_grid
from gpesolve.harness import write_snapshot


@pytest.fixture()
def snapshot_1d(tmp_path) -> Path:
    g = make_grid(1, 20.0, 64)
    (x,) = g.meshgrid()
    f = ComplexField(g, np.tanh(x).astype(complex))
    stem = tmp_path / "snap1d"
    write_snapshot(stem, f, time=2.0, scheme="relaxation", parameters={"dt": 0.01})
    return stem


@pytest.fixture()
def snapshot_series_1d(tmp_path) -> list[Path]:
    g = make_grid(1, 20.0, 64)
    (x,) = g.meshgrid()
    stems = []
    for i, t in enumerate([0.0, 1.0, 2.0]):
        f = ComplexField(g, np.exp(-((x - t) ** 2)).astype(complex))
        stem = tmp_path / f"series_{i:03d}"
        write_snapshot(stem, f, time=t, scheme="relaxation")
        stems.append(stem)
    return stems


@pytest.fixture()
def snapshot_2d(tmp_path) -> Path:
    g = make_grid(2, 16.0, 32)
    x1, x2 = g.meshgrid()
    f = ComplexField(g, (np.exp(-(x1**2 + x2**2) / 2) * np.exp(1j * x1)))
    stem = tmp_path / "snap2d"
    write_snapshot(stem, f, time=5.0, scheme="generalized-relaxation")
    return stem


@pytest.fixture()
def diagnostics_csv(tmp_path) -> Path:
    path = tmp_path / "diagnostics_test.csv"
    header = [
        "step",
        "time",
        "mass",
        "energy",
        "rel_energy_error",
        "fp_iters",
        "krylov_iters",
        "gamma_clamps",
    ]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerow([0, 0.0, 1.0, -0.5, 0.0, 0, 0, 0])
        for n in range(1, 6):
            writer.writerow([n, 0.01 * n, 1.0, -0.5, 1e-14 * n, 7, 0, 0])
    return path


@pytest.fixture()
def sweep_csv(tmp_path) -> Path:
    path = tmp_path / "energy_sweep_sigma2.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scheme", "sigma", "dt", "energy_error"])
        for scheme, scale in [("relaxation", 0.1), ("crank-nicolson", 1e-11)]:
            for dt in (0.04, 0.01, 0.0025):
                writer.writerow([scheme, 2, dt, scale * dt**2])
    return path
