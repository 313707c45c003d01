//! Problem configuration and the two-amplitude reduced state.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance of the normalization gate applied to user-supplied states.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Reduces an angle to `[0, 2π)`.
pub fn canonical_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Search-space size, marked-state phase and marked index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConfig {
    n: u64,
    theta: f64,
    marked: u64,
}

impl ProblemConfig {
    /// Validates `n >= 2` and a finite `theta`; the phase is stored modulo 2π.
    /// The marked index defaults to 0.
    pub fn new(n: u64, theta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        if !theta.is_finite() {
            return Err(Error::NonFiniteTheta(theta));
        }
        Ok(Self {
            n,
            theta: canonical_theta(theta),
            marked: 0,
        })
    }

    pub fn with_marked(self, marked: u64) -> Result<Self> {
        if marked >= self.n {
            return Err(Error::MarkedOutOfRange { marked, n: self.n });
        }
        Ok(Self { marked, ..self })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Marked-state phase in `[0, 2π)`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn marked(&self) -> u64 {
        self.marked
    }

    pub fn rotation_angle(&self) -> RotationAngle {
        RotationAngle::for_size(self.n)
    }

    /// `e^{iθ}`
    pub fn phase(&self) -> Complex64 {
        Complex64::cis(self.theta)
    }
}

/// The standard Grover rotation angle ψ for a search space of size `N`,
/// with `cos ψ = (N-2)/N` and `sin ψ = 2√(N-1)/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle {
    pub psi: f64,
    pub cos_psi: f64,
    pub sin_psi: f64,
}

impl RotationAngle {
    fn for_size(n: u64) -> Self {
        debug_assert!(n >= 2);
        let nf = n as f64;
        Self {
            psi: 2.0 * (1.0 / nf.sqrt()).asin(),
            cos_psi: (n - 2) as f64 / nf,
            sin_psi: 2.0 * ((n - 1) as f64).sqrt() / nf,
        }
    }
}

pub fn rotation_angle(n: u64) -> Result<RotationAngle> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    Ok(RotationAngle::for_size(n))
}

/// Amplitudes `(B, A)` of the marked state and of the normalized uniform
/// superposition of the unmarked states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    b: Complex64,
    a: Complex64,
}

impl ReducedState {
    /// No normalization check; used for states produced by unitary steps.
    pub(crate) fn from_parts(b: Complex64, a: Complex64) -> Self {
        Self { b, a }
    }

    /// Marked-state amplitude.
    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Amplitude of the unmarked superposition.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn norm_sqr(&self) -> f64 {
        self.b.norm_sqr() + self.a.norm_sqr()
    }

    /// `|b|² + |a|² - 1`
    pub fn norm_defect(&self) -> f64 {
        self.norm_sqr() - 1.0
    }

    /// Largest componentwise distance to `other`.
    pub fn max_component_diff(&self, other: &ReducedState) -> f64 {
        (self.b - other.b).norm().max((self.a - other.a).norm())
    }
}

/// Uniform superposition over all `n` basis states: `b = 1/√N`, `a = √((N-1)/N)`.
pub fn uniform_initial_state(n: u64) -> Result<ReducedState> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let nf = n as f64;
    Ok(ReducedState {
        b: Complex64::new(1.0 / nf.sqrt(), 0.0),
        a: Complex64::new(((n - 1) as f64 / nf).sqrt(), 0.0),
    })
}

/// Accepts an arbitrary amplitude pair if `|b|² + |a|²` is within 1e-9 of one.
pub fn custom_initial_state(b: Complex64, a: Complex64) -> Result<ReducedState> {
    let state = ReducedState { b, a };
    let norm_sqr = state.norm_sqr();
    let defect = norm_sqr - 1.0;
    if defect.is_nan() || defect.abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr, defect });
    }
    Ok(state)
}
