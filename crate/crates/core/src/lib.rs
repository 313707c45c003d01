//! Grover search with an arbitrary phase rotation of the marked state.
//!
//! One iteration multiplies the marked amplitude by `e^{iθ}` and then
//! inverts every amplitude about the mean. Starting from a state that is
//! symmetric over the unmarked basis states, the evolution never leaves the
//! two-dimensional subspace spanned by the marked state and the uniform
//! superposition of the unmarked ones, so it is fully described by the pair
//! of amplitudes `(B, A)`.
//!
//! The marked amplitude is computed three independent ways:
//!
//! * [`reduced`]: repeated application of the 2×2 iteration matrix,
//! * [`spectral`]: eigen-decomposition of that matrix and a closed form in `j`,
//! * [`full`]: brute-force simulation of all `N` amplitudes.
//!
//! [`analysis`] builds θ-sweeps, peak counts, trajectory statistics and the
//! datasets for the standard figures on top of them, and [`verify`] runs the
//! cross-checks between the three routes.

pub mod analysis;
pub mod error;
pub mod full;
pub mod model;
pub mod reduced;
pub mod spectral;
pub mod table;
pub mod verify;

pub use num_complex::Complex64;

pub use analysis::{
    count_peaks, figure_dataset, marked_amplitude_after, matrix_table, theta_sweep,
    theta_sweep_with_engine, trajectory, trajectory_stats, trajectory_table, trajectory_with_limit,
    Engine, Figure, PeakReport, ThetaSweep, TrajectoryStats,
};
pub use error::{Error, Result};
pub use full::{
    apply_diffusion, apply_phase_oracle, full_iterate, full_iterate_with_limit, lift, project,
    FullState, DEFAULT_MAX_N,
};
pub use model::{
    custom_initial_state, rotation_angle, uniform_initial_state, ProblemConfig, ReducedState,
    RotationAngle,
};
pub use reduced::{
    build_iteration_matrix, grover_reference_amplitude, iterate, step, IterationMatrix, Trajectory,
};
pub use spectral::{closed_form_state, diagonalize, eigenphase_separation, Spectrum};
pub use table::{Cell, Table};
