//! Shared fixtures for the criterion benchmarks.

use std::f64::consts::PI;

use grover_phase::{uniform_initial_state, ProblemConfig, ReducedState};

/// The phases used by the standard figures.
pub const FIGURE_PHASES: [(&str, f64); 4] = [
    ("pi/4", PI / 4.0),
    ("pi/3", PI / 3.0),
    ("pi/1.1", PI / 1.1),
    ("pi", PI),
];

pub fn setup(n: u64, theta: f64) -> (ProblemConfig, ReducedState) {
    (
        ProblemConfig::new(n, theta).expect("valid benchmark config"),
        uniform_initial_state(n).expect("valid benchmark size"),
    )
}
