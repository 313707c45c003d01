//! The 2×2 iteration matrix and direct evolution of the reduced state.

use num_complex::Complex64;

use crate::error::Result;
use crate::model::{rotation_angle, ProblemConfig, ReducedState};

/// One iteration (phase oracle, then inversion about the mean) restricted
/// to the `(B, A)` subspace. Row-major, rows and columns ordered `(B, A)`:
///
/// ```text
/// [ -cosψ·e^{iθ}   sinψ ]
/// [  sinψ·e^{iθ}   cosψ ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationMatrix {
    entries: [[Complex64; 2]; 2],
}

impl IterationMatrix {
    /// Wraps arbitrary entries. Nothing is checked; callers that need a
    /// genuine iteration should use [`build_iteration_matrix`].
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn apply(&self, state: &ReducedState) -> ReducedState {
        let [[m00, m01], [m10, m11]] = self.entries;
        let (b, a) = (state.b(), state.a());
        ReducedState::from_parts(m00 * b + m01 * a, m10 * b + m11 * a)
    }

    pub fn determinant(&self) -> Complex64 {
        let [[m00, m01], [m10, m11]] = self.entries;
        m00 * m11 - m01 * m10
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Largest entry of `|M†M - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut s: Complex64 = m.iter().map(|row| row[i].conj() * row[j]).sum();
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }
}

pub fn build_iteration_matrix(config: &ProblemConfig) -> IterationMatrix {
    let r = config.rotation_angle();
    let phase = config.phase();
    let sin = Complex64::new(r.sin_psi, 0.0);
    IterationMatrix {
        entries: [
            [-r.cos_psi * phase, sin],
            [r.sin_psi * phase, Complex64::new(r.cos_psi, 0.0)],
        ],
    }
}

pub fn step(state: &ReducedState, m: &IterationMatrix) -> ReducedState {
    m.apply(state)
}

/// States `j = 0 ..= j_max` of one run, index `j` holding the state after
/// `j` iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    config: ProblemConfig,
    states: Vec<ReducedState>,
}

impl Trajectory {
    pub(crate) fn new(config: ProblemConfig, states: Vec<ReducedState>) -> Self {
        debug_assert!(!states.is_empty());
        Self { config, states }
    }

    pub fn config(&self) -> &ProblemConfig {
        &self.config
    }

    pub fn states(&self) -> &[ReducedState] {
        &self.states
    }

    pub fn j_max(&self) -> usize {
        self.states.len() - 1
    }

    pub fn last(&self) -> &ReducedState {
        self.states.last().expect("trajectory is never empty")
    }

    /// `|B_j|` for every `j`.
    pub fn marked_norms(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.b().norm()).collect()
    }

    /// Largest `| |b|² + |a|² - 1 |` along the trajectory.
    pub fn max_norm_defect(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.norm_defect().abs())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise difference between two trajectories of equal length.
    pub fn max_component_diff(&self, other: &Trajectory) -> f64 {
        assert_eq!(self.states.len(), other.states.len());
        self.states
            .iter()
            .zip(&other.states)
            .map(|(x, y)| x.max_component_diff(y))
            .fold(0.0, f64::max)
    }
}

/// Applies the iteration matrix `j_max` times. No renormalization.
pub fn iterate(config: &ProblemConfig, initial: &ReducedState, j_max: usize) -> Trajectory {
    let m = build_iteration_matrix(config);
    let mut states = Vec::with_capacity(j_max + 1);
    let mut s = *initial;
    states.push(s);
    for _ in 0..j_max {
        s = m.apply(&s);
        states.push(s);
    }
    Trajectory::new(*config, states)
}

/// Exact marked amplitude of standard Grover (θ = π) after `j` iterations
/// from the uniform start: `sin((j + 1/2)ψ)`.
pub fn grover_reference_amplitude(n: u64, j: u64) -> Result<f64> {
    let r = rotation_angle(n)?;
    Ok(((j as f64 + 0.5) * r.psi).sin())
}
