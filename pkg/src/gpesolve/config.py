"""Experiment configuration: dataclasses, YAML parsing and validation.

Config files are nested key-value documents with sections grid / model /
scheme / solver / init / output.  Unknown keys are rejected with the full
key path in the error message.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from .integrators import SolverConfig
from .models import ModelSpec, cubic_quintic_model, harmonic_potential
from .spectral import (
    KernelSymbol,
    SpectralGrid,
    box_kernel,
    coulomb2d_kernel,
    gaussian_kernel,
    make_grid,
)
from .models import dipolar_symbol

__all__ = ["ExperimentConfig", "ConfigError", "parse_config", "from_dict", "build_runtime"]

SCHEMES = ("crank-nicolson", "relaxation", "generalized-relaxation")


class ConfigError(ValueError):
    """Invalid or malformed experiment configuration."""


@dataclass
class GridSection:
    dim: int
    extents: list[float]
    modes: list[int]
    origins: Optional[list[float]] = None


@dataclass
class ModelSection:
    beta: float = 0.0
    sigma: int = 1
    lam: float = 0.0
    omega: float = 0.0
    alpha1: Optional[float] = None
    alpha2: Optional[float] = None
    kernel: Optional[dict] = None
    potential: Optional[dict] = None


@dataclass
class SolverSection:
    fp_tol: float = 1e-12
    fp_max_iter: int = 100
    krylov_tol: float = 1e-12
    krylov_max_iter: int = 200
    linear_solver: str = "fourier-fixed-point"


@dataclass
class OutputSection:
    directory: str = "out"
    snapshot_count: int = 50


@dataclass
class ExperimentConfig:
    grid: GridSection
    model: ModelSection
    scheme: str
    dt: float
    t_final: float
    init: dict
    solver: SolverSection = field(default_factory=SolverSection)
    output: OutputSection = field(default_factory=OutputSection)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["grid"]["origins"] is None:
            del d["grid"]["origins"]
        d["model"] = {k: v for k, v in d["model"].items() if v is not None}
        return d


def _require_keys(section: dict, allowed: set[str], path: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} under '{path}'")


def from_dict(raw: dict) -> ExperimentConfig:
    """Validate a raw config dict and fill defaults."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    _require_keys(raw, {"grid", "model", "scheme", "dt", "t_final", "init", "solver", "output"}, "")
    for key in ("grid", "model", "scheme", "dt", "t_final", "init"):
        if key not in raw:
            raise ConfigError(f"missing required key '{key}'")

    g = raw["grid"]
    _require_keys(g, {"dim", "extents", "modes", "origins"}, "grid")
    try:
        grid = GridSection(
            dim=int(g["dim"]),
            extents=[float(e) for e in g["extents"]],
            modes=[int(m) for m in g["modes"]],
            origins=[float(o) for o in g["origins"]] if g.get("origins") else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid 'grid' section: {exc}") from exc
    if grid.dim not in (1, 2):
        raise ConfigError(f"grid.dim must be 1 or 2, got {grid.dim}")
    for m in grid.modes:
        if m < 8 or m & (m - 1):
            raise ConfigError(f"grid.modes must be powers of two >= 8, got {m}")
    for e in grid.extents:
        if e <= 0:
            raise ConfigError(f"grid.extents must be positive, got {e}")

    m = raw["model"]
    _require_keys(
        m,
        {"beta", "sigma", "lam", "omega", "alpha1", "alpha2", "kernel", "potential"},
        "model",
    )
    model = ModelSection(
        beta=float(m.get("beta", 0.0)),
        sigma=int(m.get("sigma", 1)),
        lam=float(m.get("lam", 0.0)),
        omega=float(m.get("omega", 0.0)),
        alpha1=float(m["alpha1"]) if "alpha1" in m else None,
        alpha2=float(m["alpha2"]) if "alpha2" in m else None,
        kernel=m.get("kernel"),
        potential=m.get("potential"),
    )
    if model.sigma < 1:
        raise ConfigError(f"model.sigma must be a positive integer, got {model.sigma}")
    if model.kernel is not None:
        _require_keys(model.kernel, {"kind", "mu", "axis"}, "model.kernel")
        if model.kernel.get("kind") not in ("box", "gaussian", "coulomb2d", "dipolar"):
            raise ConfigError(f"unknown kernel kind {model.kernel.get('kind')!r}")
    if model.potential is not None:
        _require_keys(model.potential, {"type", "gx1", "gx2"}, "model.potential")
        if model.potential.get("type") != "harmonic":
            raise ConfigError(f"unknown potential type {model.potential.get('type')!r}")

    scheme = str(raw["scheme"])
    if scheme not in SCHEMES:
        raise ConfigError(f"scheme must be one of {SCHEMES}, got {scheme!r}")

    dt = float(raw["dt"])
    t_final = float(raw["t_final"])
    if dt <= 0 or t_final <= 0:
        raise ConfigError("dt and t_final must be positive")
    n = round(t_final / dt)
    if n < 1 or not math.isclose(n * dt, t_final, rel_tol=1e-9, abs_tol=0.0):
        raise ConfigError(f"t_final={t_final} is not an integer multiple of dt={dt}")

    init = dict(raw["init"])
    _require_keys(
        init,
        {"type", "width", "mu", "alpha2", "x0", "amplitude", "charge"},
        "init",
    )
    if init.get("type") not in ("gaussian", "tanh-pair", "vortex", "gaussian-vortex"):
        raise ConfigError(f"unknown init type {init.get('type')!r}")

    s = raw.get("solver", {}) or {}
    _require_keys(
        s,
        {"fp_tol", "fp_max_iter", "krylov_tol", "krylov_max_iter", "linear_solver"},
        "solver",
    )
    solver = SolverSection(**{k: type(getattr(SolverSection(), k))(v) for k, v in s.items()})
    if solver.linear_solver not in ("fourier-fixed-point", "preconditioned-krylov"):
        raise ConfigError(f"unknown linear_solver {solver.linear_solver!r}")

    o = raw.get("output", {}) or {}
    _require_keys(o, {"directory", "snapshot_count"}, "output")
    output = OutputSection(
        directory=str(o.get("directory", "out")),
        snapshot_count=int(o.get("snapshot_count", 50)),
    )

    return ExperimentConfig(grid, model, scheme, dt, t_final, init, solver, output)


def parse_config(path: str | Path) -> ExperimentConfig:
    """Load and validate a YAML experiment config file."""
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    return from_dict(raw)


def _build_kernel(grid: SpectralGrid, spec: dict) -> KernelSymbol:
    kind = spec["kind"]
    if kind == "box":
        return box_kernel(grid, float(spec["mu"]))
    if kind == "gaussian":
        return gaussian_kernel(grid, float(spec["mu"]))
    if kind == "coulomb2d":
        return coulomb2d_kernel(grid)
    if kind == "dipolar":
        axis = tuple(float(a) for a in spec["axis"])
        return KernelSymbol("dipolar", 0.0, dipolar_symbol(grid, axis))
    raise ConfigError(f"unknown kernel kind {kind!r}")


def build_runtime(cfg: ExperimentConfig):
    """Materialize (grid, model, phi0, solver_config) from a validated config."""
    from . import experiments as xp

    grid = make_grid(cfg.grid.dim, cfg.grid.extents, cfg.grid.modes, cfg.grid.origins)

    kernel = _build_kernel(grid, cfg.model.kernel) if cfg.model.kernel else None
    if cfg.model.alpha1 is not None or cfg.model.alpha2 is not None:
        a1 = cfg.model.alpha1 or 0.0
        a2 = cfg.model.alpha2 or 0.0
        if kernel is None:
            raise ConfigError("alpha1/alpha2 models require a kernel")
        model = cubic_quintic_model(kernel, a1, a2)
    else:
        potential = None
        if cfg.model.potential is not None:
            potential = harmonic_potential(
                grid,
                float(cfg.model.potential.get("gx1", 1.0)),
                float(cfg.model.potential.get("gx2", 1.0)),
            )
        axis = None
        if cfg.model.kernel and cfg.model.kernel.get("kind") == "dipolar":
            axis = tuple(float(a) for a in cfg.model.kernel["axis"])
        model = ModelSpec(
            beta=cfg.model.beta,
            sigma=cfg.model.sigma,
            lam=cfg.model.lam,
            kernel=kernel,
            potential=potential,
            omega=cfg.model.omega,
            dipole_axis=axis,
        )

    init = cfg.init
    kind = init["type"]
    if kind == "gaussian":
        phi0 = xp.gaussian_initial(grid, float(init.get("width", 1.0)))
    elif kind == "tanh-pair":
        D = xp.soliton_width_rootfind(float(init["mu"]), float(init["alpha2"]))
        phi0 = xp.tanh_pair_initial(grid, D, float(init.get("x0", 1.0)))
    elif kind == "vortex":
        phi0 = xp.vortex_initial(grid, float(init["amplitude"]), int(init.get("charge", 1)))
    elif kind == "gaussian-vortex":
        phi0 = xp.gaussian_vortex_initial(grid, int(init.get("charge", 1)))
    else:
        raise ConfigError(f"unknown init type {kind!r}")

    solver = SolverConfig(
        dt=cfg.dt,
        fp_tol=cfg.solver.fp_tol,
        fp_max_iter=cfg.solver.fp_max_iter,
        krylov_tol=cfg.solver.krylov_tol,
        krylov_max_iter=cfg.solver.krylov_max_iter,
        linear_solver=cfg.solver.linear_solver,  # type: ignore[arg-type]
    )
    return grid, model, phi0, solver
