//! Interpolation theory made executable: sine cardinal functions and
//! Lebesgue constants, the convection–diffusion cardinal construction,
//! best approximation, error norms and convergence studies.

mod approximation;
mod convection;
mod convergence;
mod lagrange;
mod norms;

pub use approximation::{bump, sine_coefficients, sine_series};
pub use convection::{
    cd_cardinal, cd_lebesgue_constant, cd_lebesgue_sweep, psi_basis, psi_phase, CdCardinals, CdRoute, LebesgueCell,
    SweepConfig,
};
pub use convergence::{
    convergence_study, run_cell, CellFailure, ConvergenceReport, ConvergenceRow, Reference, StudyCase,
};
pub use lagrange::{
    lagrange_1d, lebesgue_constant, lebesgue_function, theorem1_bound, Cardinals, NodeSet1D,
    DEFAULT_LEBESGUE_RESOLUTION,
};
pub use norms::{
    cell_area, error_norms, norms_from_samples, sample_lattice, ErrorNorms, LatticeSample, Region,
    DEFAULT_NORM_RESOLUTION,
};
