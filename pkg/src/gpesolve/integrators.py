"""Time-stepping schemes: Crank-Nicolson with the energy-preserving
nonlinear quotient, the classical relaxation scheme, and the generalized
relaxation scheme, plus the local gamma solve and the semi-implicit linear
solve they share."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal, Optional

import numpy as np
import scipy.sparse.linalg as spla
from numpy.typing import NDArray

from .models import ModelSpec, rotation_arrays
from .spectral import ComplexField, SpectralGrid, convolve_arrays

__all__ = [
    "SolverConfig",
    "StepReport",
    "RelaxState",
    "StepFailure",
    "gamma_solve",
    "upsilon_update",
    "semi_implicit_solve",
    "cn_step",
    "relaxation_step",
    "generalized_relaxation_step",
    "init_auxiliary",
    "make_relax_state",
]

LinearSolver = Literal["fourier-fixed-point", "preconditioned-krylov"]


@dataclass(frozen=True)
class SolverConfig:
    """Time step and iteration controls for the implicit solves."""

    dt: float
    fp_tol: float = 1e-12
    fp_max_iter: int = 100
    krylov_tol: float = 1e-12
    krylov_max_iter: int = 200
    linear_solver: LinearSolver = "fourier-fixed-point"

    def __post_init__(self) -> None:
        if self.dt == 0.0:
            raise ValueError("dt must be nonzero")
        if self.fp_tol <= 0 or self.krylov_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.fp_max_iter < 1 or self.krylov_max_iter < 1:
            raise ValueError("max iterations must be >= 1")


@dataclass
class StepReport:
    """Iteration counts and residual for one completed step."""

    fp_iterations: int = 0
    krylov_iterations: int = 0
    residual: float = 0.0
    gamma_iterations: int = 0
    gamma_clamps: int = 0


class StepFailure(RuntimeError):
    """An implicit solve failed to converge within its iteration budget."""

    def __init__(self, message: str, report: Optional[StepReport] = None):
        super().__init__(message)
        self.report = report


@dataclass
class RelaxState:
    """State advanced by the relaxation schemes.

    ``gamma_prev`` approximates |phi(t - dt/2)|^2 for the generalized scheme
    (and the power auxiliary |phi|^(2 sigma) for the classical scheme at
    sigma > 1); ``upsilon_prev`` approximates |phi(t - dt/2)|^2 and feeds the
    convolution term.
    """

    phi: ComplexField
    gamma_prev: NDArray[np.float64]
    upsilon_prev: NDArray[np.float64]
    time: float = 0.0
    step_index: int = 0
    report: StepReport = field(default_factory=StepReport)

    def __post_init__(self) -> None:
        if self.gamma_prev.shape != self.phi.grid.shape:
            raise ValueError("gamma_prev shape does not match grid")
        if self.upsilon_prev.shape != self.phi.grid.shape:
            raise ValueError("upsilon_prev shape does not match grid")


def _l2(grid: SpectralGrid, v: NDArray) -> float:
    return float(np.sqrt(grid.cell_volume * np.sum(np.abs(v) ** 2)))


def gamma_solve(
    phi_n: NDArray[np.complex128],
    gamma_prev: NDArray[np.float64],
    sigma: int,
    config: SolverConfig,
) -> tuple[NDArray[np.float64], int, int]:
    """Solve the implicit local equation

        gamma^sigma = ((sigma+1)/sigma |phi_n|^2 - gamma_prev)
                      * sum_{k=0}^{sigma-1} gamma^k gamma_prev^(sigma-1-k)

    pointwise.  Closed forms for sigma in {1, 2}; fixed point otherwise.

    The implicit equation has no real solution wherever
    gamma_prev > (sigma+1)/sigma |phi_n|^2 (for sigma = 2 the quadratic
    discriminant goes negative there); this happens transiently wherever
    the density passes through zero in time.  At such points gamma is held
    at gamma_prev: the step-to-step change of the relaxation energy is
    proportional to (gamma - gamma_prev), so freezing gamma keeps the
    energy exactly conserved, whereas any other substitute injects an
    O(dt^4) residual per event.  Frozen points are counted.
    Returns (gamma, iterations, frozen_count).
    """
    rho = np.abs(phi_n) ** 2
    if sigma == 1:
        return 2.0 * rho - gamma_prev, 0, 0
    if sigma == 2:
        k1 = 1.5 * rho - gamma_prev
        disc = k1**2 + 4.0 * k1 * gamma_prev
        bad = disc < 0
        gamma = 0.5 * (k1 + np.sqrt(np.where(bad, 0.0, disc)))
        gamma = np.where(bad, gamma_prev, gamma)
        return gamma, 0, int(np.count_nonzero(bad))

    base = (sigma + 1) / sigma * rho - gamma_prev
    bad = base < 0
    clamps = int(np.count_nonzero(bad))
    base = np.where(bad, 0.0, base)
    scale = max(float(np.max(rho)), float(np.max(gamma_prev)), 1e-300)
    gamma = rho.copy()
    for p in range(config.fp_max_iter):
        acc = sum(gamma**k * gamma_prev ** (sigma - 1 - k) for k in range(sigma))
        gamma_next = base ** (1.0 / sigma) * acc ** (1.0 / sigma)
        delta = float(np.max(np.abs(gamma_next - gamma)))
        gamma = gamma_next
        if delta <= 1e-15 * scale:
            return np.where(bad, gamma_prev, gamma), p + 1, clamps
    raise StepFailure(f"gamma fixed point did not converge in {config.fp_max_iter} iterations")


def upsilon_update(
    phi_n: NDArray[np.complex128], upsilon_prev: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Staggered density update: Upsilon_{n+1/2} = 2 |phi_n|^2 - Upsilon_{n-1/2}."""
    return 2.0 * np.abs(phi_n) ** 2 - upsilon_prev


def _half_step_operator(
    grid: SpectralGrid,
    W: NDArray[np.float64],
    omega: float,
    dt: float,
):
    """Returns v -> (I - i(dt/2)(Delta/2) + i(dt/2) W - i(dt/2) omega L) v."""
    xi2 = grid.abs_xi_squared()

    def apply(v: NDArray[np.complex128]) -> NDArray[np.complex128]:
        out = grid.ifft((1.0 + 0.25j * dt * xi2) * grid.fft(v))
        out = out + 0.5j * dt * W * v
        if omega != 0.0:
            out = out - 0.5j * dt * omega * rotation_arrays(grid, v)
        return out

    return apply


def semi_implicit_solve(
    phi_n: ComplexField,
    W: NDArray[np.float64],
    omega: float,
    config: SolverConfig,
) -> tuple[ComplexField, StepReport]:
    """Solve for the midpoint field phi_{n+1/2} in

        (I - i(dt/2)(Delta/2) + i(dt/2) W - i(dt/2) omega L) phi_{n+1/2} = phi_n.

    ``W`` collects the real potential-like terms (V + beta gamma^sigma +
    lam U*Upsilon).  The caller forms phi_{n+1} = 2 phi_{n+1/2} - phi_n.
    """
    grid = phi_n.grid
    dt = config.dt
    rhs = phi_n.values
    norm_rhs = _l2(grid, rhs)
    if norm_rhs == 0.0:
        return ComplexField(grid, np.zeros_like(rhs), "physical"), StepReport()
    xi2 = grid.abs_xi_squared()
    denom = 1.0 + 0.25j * dt * xi2
    operator = _half_step_operator(grid, W, omega, dt)
    report = StepReport()

    if config.linear_solver == "fourier-fixed-point":
        rhs_hat = grid.fft(rhs)
        v = rhs.copy()
        for p in range(config.fp_max_iter):
            nl = W * v
            if omega != 0.0:
                nl = nl - omega * rotation_arrays(grid, v)
            v_next = grid.ifft((rhs_hat - 0.5j * dt * grid.fft(nl)) / denom)
            delta = _l2(grid, v_next - v)
            v = v_next
            report.fp_iterations = p + 1
            if delta <= config.fp_tol * norm_rhs:
                break
        else:
            raise StepFailure(
                f"semi-implicit fixed point did not converge in {config.fp_max_iter} iterations",
                report,
            )
    elif config.linear_solver == "preconditioned-krylov":
        shape = grid.shape

        def matvec(x: NDArray) -> NDArray:
            v = x.reshape(shape)
            nl = W * v
            if omega != 0.0:
                nl = nl - omega * rotation_arrays(grid, v)
            out = v + grid.ifft(0.5j * dt * grid.fft(nl) / denom)
            return out.ravel()

        n = int(np.prod(shape))
        lin_op = spla.LinearOperator((n, n), matvec=matvec, dtype=np.complex128)
        prec_rhs = grid.ifft(grid.fft(rhs) / denom).ravel()
        counter = {"n": 0}

        def count(_):
            counter["n"] += 1

        x, info = spla.gmres(
            lin_op,
            prec_rhs,
            rtol=config.krylov_tol,
            atol=0.0,
            maxiter=config.krylov_max_iter,
            restart=min(50, config.krylov_max_iter),
            callback=count,
            callback_type="pr_norm",
        )
        report.krylov_iterations = counter["n"]
        if info != 0:
            raise StepFailure(f"GMRES did not converge (info={info})", report)
        v = x.reshape(shape)
    else:
        raise ValueError(f"unknown linear solver {config.linear_solver!r}")

    report.residual = _l2(grid, operator(v) - rhs) / norm_rhs
    return ComplexField(grid, v, "physical"), report


def _w_field(
    grid: SpectralGrid,
    model: ModelSpec,
    local_term: NDArray[np.float64],
    upsilon: Optional[NDArray[np.float64]],
) -> NDArray[np.float64]:
    W = np.array(local_term, dtype=np.float64, copy=True)
    if model.potential is not None:
        W += model.potential
    if model.lam != 0.0 and model.kernel is not None and upsilon is not None:
        W += model.lam * convolve_arrays(grid, model.kernel, upsilon)
    return W


def cn_step(
    phi_n: ComplexField, model: ModelSpec, config: SolverConfig
) -> tuple[ComplexField, StepReport]:
    """One Crank-Nicolson step.

    The nonlinear power term uses the non-singular polynomial form
    (beta/(sigma+1)) sum_{k=0}^{sigma} |phi_{n+1}|^(2k) |phi_n|^(2(sigma-k));
    the resulting nonlinear system is solved by plain Picard iteration over
    the quotient and convolution terms, one semi-implicit solve per pass.
    """
    grid = phi_n.grid
    rho_n = np.abs(phi_n.values) ** 2
    norm0 = _l2(grid, phi_n.values)
    report = StepReport()
    phi_next = phi_n.values.copy()
    for p in range(config.fp_max_iter):
        rho_p = np.abs(phi_next) ** 2
        quotient = (model.beta / (model.sigma + 1)) * sum(
            rho_p**k * rho_n ** (model.sigma - k) for k in range(model.sigma + 1)
        )
        W = _w_field(grid, model, quotient, 0.5 * (rho_p + rho_n))
        phi_half, inner = semi_implicit_solve(phi_n, W, model.omega, config)
        report.krylov_iterations += inner.krylov_iterations
        report.residual = inner.residual
        candidate = 2.0 * phi_half.values - phi_n.values
        delta = _l2(grid, candidate - phi_next)
        phi_next = candidate
        report.fp_iterations = p + 1
        if delta <= config.fp_tol * max(norm0, 1e-300):
            return ComplexField(grid, phi_next, "physical"), report
    raise StepFailure(
        f"Crank-Nicolson outer iteration did not converge in {config.fp_max_iter} iterations",
        report,
    )


def relaxation_step(
    state: RelaxState, model: ModelSpec, config: SolverConfig
) -> RelaxState:
    """One step of the classical relaxation scheme.

    For sigma = 1 this is the textbook linearly implicit scheme.  For
    sigma > 1 the power auxiliary follows |phi|^(2 sigma) directly
    (theta_{n+1/2} = 2 |phi_n|^(2 sigma) - theta_{n-1/2}, stored in
    ``gamma_prev``), which is second order but does not conserve the
    relaxation energy.
    """
    grid = state.phi.grid
    phi_n = state.phi.values
    rho = np.abs(phi_n) ** 2
    theta = 2.0 * rho**model.sigma - state.gamma_prev
    upsilon = 2.0 * rho - state.upsilon_prev
    W = _w_field(grid, model, model.beta * theta, upsilon)
    phi_half, report = semi_implicit_solve(state.phi, W, model.omega, config)
    phi_next = 2.0 * phi_half.values - phi_n
    n = state.step_index + 1
    return RelaxState(
        phi=ComplexField(grid, phi_next, "physical"),
        gamma_prev=theta,
        upsilon_prev=upsilon,
        time=n * config.dt,
        step_index=n,
        report=report,
    )


def generalized_relaxation_step(
    state: RelaxState, model: ModelSpec, config: SolverConfig
) -> RelaxState:
    """One step of the generalized relaxation scheme (any integer sigma >= 1).

    For sigma = 1 the trajectory coincides with the classical scheme.
    """
    grid = state.phi.grid
    phi_n = state.phi.values
    gamma, gamma_iters, clamps = gamma_solve(phi_n, state.gamma_prev, model.sigma, config)
    upsilon = upsilon_update(phi_n, state.upsilon_prev)
    W = _w_field(grid, model, model.beta * gamma**model.sigma, upsilon)
    phi_half, report = semi_implicit_solve(state.phi, W, model.omega, config)
    report.gamma_iterations = gamma_iters
    report.gamma_clamps = clamps
    phi_next = 2.0 * phi_half.values - phi_n
    n = state.step_index + 1
    return RelaxState(
        phi=ComplexField(grid, phi_next, "physical"),
        gamma_prev=gamma,
        upsilon_prev=upsilon,
        time=n * config.dt,
        step_index=n,
        report=report,
    )


def init_auxiliary(
    phi0: ComplexField,
    model: ModelSpec,
    config: SolverConfig,
    mode: Literal["exact-provided", "reverse-cn-half-step"] = "reverse-cn-half-step",
    phi_minus_half: Optional[ComplexField] = None,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Initialize the staggered auxiliaries (gamma_{-1/2}, Upsilon_{-1/2}).

    Both are set to |phi(-dt/2)|^2, with phi(-dt/2) either supplied exactly
    or approximated by one Crank-Nicolson step of size -dt/2 from phi0.
    """
    if mode == "exact-provided":
        if phi_minus_half is None:
            raise ValueError("exact-provided mode requires phi_minus_half")
        rho = np.abs(phi_minus_half.values) ** 2
    elif mode == "reverse-cn-half-step":
        back = replace(config, dt=-config.dt / 2.0)
        phi_mh, _ = cn_step(phi0, model, back)
        rho = np.abs(phi_mh.values) ** 2
    else:
        raise ValueError(f"unknown init mode {mode!r}")
    return rho.copy(), rho.copy()


def make_relax_state(
    phi0: ComplexField,
    model: ModelSpec,
    config: SolverConfig,
    scheme: Literal["relaxation", "generalized-relaxation"] = "generalized-relaxation",
    mode: Literal["exact-provided", "reverse-cn-half-step"] = "reverse-cn-half-step",
    phi_minus_half: Optional[ComplexField] = None,
) -> RelaxState:
    """Bundle phi0 with initialized auxiliaries into a RelaxState.

    The classical scheme stores the power auxiliary |phi(-dt/2)|^(2 sigma)
    in the gamma slot.
    """
    gamma, upsilon = init_auxiliary(phi0, model, config, mode, phi_minus_half)
    if scheme == "relaxation" and model.sigma > 1:
        gamma = gamma**model.sigma
    return RelaxState(phi=phi0.copy(), gamma_prev=gamma, upsilon_prev=upsilon)
