"""Energy-preserving pseudo-spectral solvers for nonlinear Schrodinger /
Gross-Pitaevskii equations: Crank-Nicolson, classical relaxation, and the
generalized relaxation scheme, with conservation diagnostics and a
convergence harness."""

from .spectral import (
    ComplexField,
    KernelSymbol,
    SpectralGrid,
    apply_gradient,
    apply_laplacian,
    box_kernel,
    coulomb2d_kernel,
    fft_forward,
    fft_inverse,
    gaussian_kernel,
    make_grid,
    spectral_convolve,
)
from .models import (
    ModelSpec,
    apply_rotation,
    cubic_quintic_model,
    dipolar_psi,
    harmonic_potential,
    nonlinear_density,
)
from .integrators import (
    RelaxState,
    SolverConfig,
    StepFailure,
    StepReport,
    cn_step,
    gamma_solve,
    generalized_relaxation_step,
    init_auxiliary,
    make_relax_state,
    relaxation_step,
    semi_implicit_solve,
    upsilon_update,
)
from .observables import (
    DiagnosticsRecord,
    energy_cn,
    energy_rlx,
    mass,
    relative_energy_error_series,
)
from .config import ExperimentConfig, ConfigError, parse_config
from .harness import convergence_study, read_snapshot, run_experiment, run_trajectory

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
