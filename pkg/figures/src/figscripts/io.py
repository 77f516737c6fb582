"""Readers for the solver's on-disk formats.

Implemented against the documented formats only (no import of the solver
package):

* diagnostics CSV: header ``step,time,mass,energy,rel_energy_error,
  fp_iters,krylov_iters,gamma_clamps``, one row per trajectory point;
* sweep CSV: header ``scheme,sigma,dt,energy_error``, one row per
  (scheme, time step) pair;
* snapshot: ``<stem>.json`` header (grid geometry, time, scheme, layout
  metadata) next to ``<stem>.bin`` holding the field as little-endian
  complex128, row-major.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "InputError",
    "Snapshot",
    "read_diagnostics_csv",
    "read_sweep_csv",
    "read_snapshot",
]

DIAGNOSTICS_COLUMNS = [
    "step",
    "time",
    "mass",
    "energy",
    "rel_energy_error",
    "fp_iters",
    "krylov_iters",
    "gamma_clamps",
]
SWEEP_COLUMNS = ["scheme", "sigma", "dt", "energy_error"]


class InputError(ValueError):
    """A figure input file is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class Snapshot:
    """One field snapshot: complex values plus grid geometry and metadata."""

    values: NDArray[np.complex128]
    dim: int
    extents: tuple[float, ...]
    origins: tuple[float, ...]
    time: float
    scheme: str
    header: dict

    def axis_coords(self, axis: int) -> NDArray[np.float64]:
        J = self.values.shape[axis]
        return self.origins[axis] + self.extents[axis] / J * np.arange(J)

    def intensity(self) -> NDArray[np.float64]:
        return np.abs(self.values) ** 2


def _read_csv(path: Path, expected_header: list[str]) -> list[dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise InputError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file")
        if header != expected_header:
            raise InputError(
                f"{path}: unexpected header {header}, expected {expected_header}"
            )
        rows = [dict(zip(header, row)) for row in reader]
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def read_diagnostics_csv(path: Path) -> dict[str, NDArray]:
    """Per-step diagnostics as a column dict of numeric arrays."""
    rows = _read_csv(Path(path), DIAGNOSTICS_COLUMNS)
    try:
        return {
            name: np.array([float(r[name]) for r in rows])
            for name in DIAGNOSTICS_COLUMNS
        }
    except ValueError as exc:
        raise InputError(f"{path}: non-numeric value ({exc})") from exc


def read_sweep_csv(path: Path) -> list[dict]:
    """Energy-error sweep rows with numeric dt/error, grouped as written."""
    rows = _read_csv(Path(path), SWEEP_COLUMNS)
    out = []
    for r in rows:
        try:
            out.append(
                {
                    "scheme": r["scheme"],
                    "sigma": int(r["sigma"]),
                    "dt": float(r["dt"]),
                    "energy_error": float(r["energy_error"]),
                }
            )
        except ValueError as exc:
            raise InputError(f"{path}: non-numeric value ({exc})") from exc
    return out


def _resolve_stem(path: Path) -> Path:
    path = Path(path)
    name = path.name
    for suffix in (".json", ".bin"):
        if name.endswith(suffix):
            return path.parent / name[: -len(suffix)]
    return path


def read_snapshot(path: Path) -> Snapshot:
    """Load a snapshot from its stem (or either of its two file names)."""
    stem = _resolve_stem(path)
    json_path = stem.parent / (stem.name + ".json")
    bin_path = stem.parent / (stem.name + ".bin")
    if not json_path.exists() or not bin_path.exists():
        raise InputError(f"snapshot files not found for stem {stem}")
    try:
        header = json.loads(json_path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{json_path}: invalid JSON ({exc})") from exc
    try:
        grid = header["grid"]
        modes = [int(m) for m in grid["modes"]]
        extents = tuple(float(e) for e in grid["extents"])
        origins = tuple(float(o) for o in grid["origins"])
        dim = int(grid["dim"])
        time = float(header["time"])
        scheme = str(header["scheme"])
        payload_bytes = int(header["payload_bytes"])
        dtype = header["dtype"]
        endianness = header["endianness"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{json_path}: malformed header ({exc})") from exc
    if dtype != "complex128" or endianness != "little":
        raise InputError(f"{json_path}: unsupported payload encoding {dtype}/{endianness}")
    raw = bin_path.read_bytes()
    if len(raw) != payload_bytes:
        raise InputError(
            f"{bin_path}: payload is {len(raw)} bytes, header says {payload_bytes}"
        )
    expected = int(np.prod(modes)) * 16
    if len(raw) != expected:
        raise InputError(f"{bin_path}: payload size does not match grid {modes}")
    values = np.frombuffer(raw, dtype="<c16").reshape(modes)
    return Snapshot(values, dim, extents, origins, time, scheme, header)
