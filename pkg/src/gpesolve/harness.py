"""Experiment driver: time loops, diagnostics CSV, snapshot files, and
time-step refinement studies."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .config import ExperimentConfig, build_runtime
from .integrators import (
    RelaxState,
    SolverConfig,
    StepReport,
    cn_step,
    generalized_relaxation_step,
    make_relax_state,
    relaxation_step,
)
from .models import ModelSpec
from .observables import DiagnosticsRecord, energy_cn, energy_rlx, mass
from .spectral import ComplexField, SpectralGrid, make_grid

__all__ = [
    "run_trajectory",
    "run_experiment",
    "convergence_study",
    "ConvergenceRow",
    "write_diagnostics_csv",
    "write_snapshot",
    "read_snapshot",
]

CSV_COLUMNS = [
    "step",
    "time",
    "mass",
    "energy",
    "rel_energy_error",
    "fp_iters",
    "krylov_iters",
    "gamma_clamps",
]


def _scheme_energy(
    scheme: str, model: ModelSpec, phi: ComplexField, state: Optional[RelaxState]
) -> float:
    """Scheme-matched discrete energy of the current trajectory point."""
    if scheme == "crank-nicolson":
        return energy_cn(phi, model)
    if scheme == "relaxation" and model.sigma > 1:
        # the classical scheme has no conserved discrete energy at sigma > 1;
        # the monitored quantity is the plain discrete energy of the state
        return energy_cn(phi, model)
    assert state is not None
    return energy_rlx(phi, state.gamma_prev, state.upsilon_prev, model)


def run_trajectory(
    grid: SpectralGrid,
    model: ModelSpec,
    phi0: ComplexField,
    scheme: str,
    solver: SolverConfig,
    n_steps: int,
    on_step: Optional[Callable[[int, ComplexField], None]] = None,
) -> tuple[ComplexField, list[DiagnosticsRecord]]:
    """Advance n_steps from phi0, collecting one DiagnosticsRecord per point
    (including t=0).  ``on_step`` is called with (step_index, phi) for every
    point, t=0 included."""
    records: list[DiagnosticsRecord] = []
    state: Optional[RelaxState] = None
    phi = phi0.copy()
    if scheme in ("relaxation", "generalized-relaxation"):
        state = make_relax_state(phi0, model, solver, scheme=scheme)  # type: ignore[arg-type]
        phi = state.phi

    e0 = _scheme_energy(scheme, model, phi, state)
    records.append(DiagnosticsRecord(0.0, mass(phi), e0, e0, 0.0))
    if on_step is not None:
        on_step(0, phi)

    for n in range(1, n_steps + 1):
        if scheme == "crank-nicolson":
            phi, report = cn_step(phi, model, solver)
        elif scheme == "relaxation":
            state = relaxation_step(state, model, solver)
            phi, report = state.phi, state.report
        elif scheme == "generalized-relaxation":
            state = generalized_relaxation_step(state, model, solver)
            phi, report = state.phi, state.report
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
        e = _scheme_energy(scheme, model, phi, state)
        rel = abs(e - e0) / abs(e0) if e0 != 0.0 else abs(e - e0)
        records.append(
            DiagnosticsRecord(n * solver.dt, mass(phi), e, e0, rel, report)
        )
        if on_step is not None:
            on_step(n, phi)
    return phi, records


def write_diagnostics_csv(path: Path, records: Sequence[DiagnosticsRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for n, r in enumerate(records):
            writer.writerow(
                [
                    n,
                    f"{r.time:.17g}",
                    f"{r.mass:.17g}",
                    f"{r.energy_scheme:.17g}",
                    f"{r.rel_energy_error:.17g}",
                    r.solver_report.fp_iterations,
                    r.solver_report.krylov_iterations,
                    r.solver_report.gamma_clamps,
                ]
            )


def write_snapshot(
    stem: Path,
    phi: ComplexField,
    time: float,
    scheme: str,
    parameters: Optional[dict] = None,
) -> None:
    """Write <stem>.bin (raw little-endian float64 interleaved Re,Im,
    row-major) plus the <stem>.json structured-text header."""
    grid = phi.grid
    payload = np.ascontiguousarray(phi.values, dtype="<c16").tobytes()
    header = {
        "grid": {
            "dim": grid.dim,
            "extents": list(grid.extents),
            "modes": list(grid.modes),
            "origins": list(grid.origins),
        },
        "time": time,
        "scheme": scheme,
        "parameters": parameters or {},
        "endianness": "little",
        "dtype": "complex128",
        "layout": "row-major interleaved (Re, Im)",
        "payload_bytes": len(payload),
    }
    # append (not substitute) the suffixes: stems may contain dots, e.g.
    # a "dt0.01" tag, which Path.with_suffix would truncate
    stem = Path(stem)
    stem.parent.joinpath(stem.name + ".json").write_text(
        json.dumps(header, indent=2) + "\n"
    )
    stem.parent.joinpath(stem.name + ".bin").write_bytes(payload)


def read_snapshot(stem: Path) -> tuple[ComplexField, dict]:
    """Read a snapshot written by write_snapshot."""
    stem = Path(stem)
    header = json.loads(stem.parent.joinpath(stem.name + ".json").read_text())
    g = header["grid"]
    grid = make_grid(g["dim"], g["extents"], g["modes"], g.get("origins"))
    raw = stem.parent.joinpath(stem.name + ".bin").read_bytes()
    values = np.frombuffer(raw, dtype="<c16").reshape(grid.shape)
    return ComplexField(grid, values.copy(), "physical"), header


def _snapshot_steps(n_steps: int, count: int) -> set[int]:
    # evenly spaced cadence, always including t=0 and t=T
    if count <= 2 or n_steps == 0:
        return {0, n_steps}
    return set(int(round(s)) for s in np.linspace(0, n_steps, count))


def run_experiment(
    cfg: ExperimentConfig, output_dir: Optional[Path] = None
) -> list[DiagnosticsRecord]:
    """Run a configured experiment, writing diagnostics.csv and snapshots.

    On a failed step the partial diagnostics are still written before the
    failure propagates.
    """
    grid, model, phi0, solver = build_runtime(cfg)
    out = Path(output_dir) if output_dir is not None else Path(cfg.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    n_steps = cfg.n_steps
    snap_at = _snapshot_steps(n_steps, cfg.output.snapshot_count)
    tag = f"{cfg.scheme}_dt{cfg.dt:g}"

    def on_step(n: int, phi: ComplexField) -> None:
        if n in snap_at:
            write_snapshot(
                out / f"snapshot_{tag}_{n:06d}", phi, n * cfg.dt, cfg.scheme,
                parameters={"dt": cfg.dt, "sigma": model.sigma},
            )

    records: list[DiagnosticsRecord] = []
    try:
        _, records = run_trajectory(
            grid, model, phi0, cfg.scheme, solver, n_steps, on_step=on_step
        )
    finally:
        if records:
            write_diagnostics_csv(out / f"diagnostics_{tag}.csv", records)
    return records


@dataclass
class ConvergenceRow:
    dt: float
    solution_error: float
    energy_error: float
    failed: bool = False


def convergence_study(
    cfg: ExperimentConfig,
    dt_list: Sequence[float],
    ref_divisor: int = 20,
) -> tuple[list[ConvergenceRow], Optional[float], Optional[float]]:
    """Run cfg at each dt, measure the final-time solution error against a
    reference run at min(dt)/ref_divisor, and the sup relative energy error.

    Returns (rows, solution_slope, energy_slope); a slope is None when fewer
    than two valid points exist, and the energy slope is None when the
    scheme conserves (all energy errors <= 1e-10, flagged "conserved").
    """
    if len(dt_list) < 3:
        raise ValueError("dt_list must have at least 3 entries")
    if max(dt_list) / min(dt_list) < 10.0:
        raise ValueError("dt_list must span at least one decade")
    grid, model, phi0, solver = build_runtime(cfg)
    T = cfg.t_final

    dt_ref = min(dt_list) / ref_divisor
    n_ref = int(round(T / dt_ref))
    dt_ref = T / n_ref
    phi_ref, _ = run_trajectory(
        grid, model, phi0, cfg.scheme, replace(solver, dt=dt_ref), n_ref
    )
    ref_norm = np.sqrt(grid.cell_volume * np.sum(np.abs(phi_ref.values) ** 2))

    rows: list[ConvergenceRow] = []
    for dt in dt_list:
        n = max(1, int(round(T / dt)))
        dt_run = T / n
        try:
            phi_T, records = run_trajectory(
                grid, model, phi0, cfg.scheme, replace(solver, dt=dt_run), n
            )
        except Exception:
            rows.append(ConvergenceRow(dt_run, float("nan"), float("nan"), failed=True))
            continue
        err = np.sqrt(
            grid.cell_volume * np.sum(np.abs(phi_T.values - phi_ref.values) ** 2)
        ) / ref_norm
        e_err = max(r.rel_energy_error for r in records)
        rows.append(ConvergenceRow(dt_run, float(err), float(e_err)))

    def _slope(errors: list[float], dts: list[float]) -> Optional[float]:
        if len(errors) < 2:
            return None
        return float(np.polyfit(np.log(dts), np.log(errors), 1)[0])

    ok = [r for r in rows if not r.failed and r.solution_error > 0]
    sol_slope = _slope([r.solution_error for r in ok], [r.dt for r in ok])
    e_ok = [r for r in rows if not r.failed]
    if e_ok and all(r.energy_error <= 1e-10 for r in e_ok):
        energy_slope = None  # conserved to tolerance, no slope fit
    else:
        pos = [r for r in e_ok if r.energy_error > 0]
        energy_slope = _slope([r.energy_error for r in pos], [r.dt for r in pos])
    return rows, sol_slope, energy_slope
