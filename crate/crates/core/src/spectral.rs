//! Eigen-decomposition of the iteration matrix and the closed-form amplitude
//! after `j` iterations.
//!
//! The iteration matrix `T` is unitary with `det T = -e^{iθ}` and
//! `tr T = cosψ (1 - e^{iθ})`, so its eigenvalues are `e^{iγ₁}`, `e^{iγ₂}`
//! with
//!
//! ```text
//! γ₁ = (π + θ)/2 + δ,   γ₂ = (π + θ)/2 - δ,   cos δ = -cosψ · sin(θ/2),
//! ```
//!
//! `δ ∈ [0, π]`. In particular `γ₁ + γ₂ ≡ π + θ (mod 2π)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{canonical_theta, ProblemConfig, ReducedState};
use crate::reduced::{build_iteration_matrix, IterationMatrix};

/// Smallest `|λ₁ - λ₂|` for which the eigenbasis is used.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    gamma1: f64,
    gamma2: f64,
    delta: f64,
    u: [[Complex64; 2]; 2],
}

/// `(cos δ, sin δ)`. The sine is written as `cos²(θ/2) + sin²(θ/2)·sin²ψ`
/// under the root, which avoids the cancellation in `1 - cos²δ`.
fn half_separation_trig(config: &ProblemConfig) -> (f64, f64) {
    let r = config.rotation_angle();
    let (s, c) = (0.5 * config.theta()).sin_cos();
    let cos_delta = -r.cos_psi * s;
    let sin_delta = (c * c + s * s * r.sin_psi * r.sin_psi).sqrt();
    (cos_delta, sin_delta)
}

fn half_separation(config: &ProblemConfig) -> f64 {
    let (c, s) = half_separation_trig(config);
    s.atan2(c)
}

/// Unit eigenvector of a 2×2 matrix for eigenvalue `lambda`, taken from
/// whichever row of `M - λI` gives the better conditioned null vector.
fn eigenvector(m: &IterationMatrix, lambda: Complex64) -> [Complex64; 2] {
    let [[m00, m01], [m10, m11]] = *m.entries();
    let from_row0 = [m01, lambda - m00];
    let from_row1 = [lambda - m11, m10];
    let n0 = from_row0[0].norm_sqr() + from_row0[1].norm_sqr();
    let n1 = from_row1[0].norm_sqr() + from_row1[1].norm_sqr();
    let (v, n) = if n0 >= n1 {
        (from_row0, n0)
    } else {
        (from_row1, n1)
    };
    let inv = 1.0 / n.sqrt();
    [v[0] * inv, v[1] * inv]
}

impl Spectrum {
    /// Eigenphase paired with the first column of [`Spectrum::u`], in `[0, 2π)`.
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// Half the eigenphase separation, in `[0, π]`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Unitary matrix whose columns are the normalized eigenvectors.
    pub fn u(&self) -> &[[Complex64; 2]; 2] {
        &self.u
    }

    pub fn eigenvalues(&self) -> [Complex64; 2] {
        [Complex64::cis(self.gamma1), Complex64::cis(self.gamma2)]
    }

    /// Column `k` of `u`.
    pub fn eigenvector(&self, k: usize) -> [Complex64; 2] {
        [self.u[0][k], self.u[1][k]]
    }

    /// `u · diag(e^{ijγ₁}, e^{ijγ₂}) · u† · initial`
    pub fn state_after(&self, initial: &ReducedState, j: u64) -> ReducedState {
        let u = &self.u;
        let (b, a) = (initial.b(), initial.a());
        let c1 = u[0][0].conj() * b + u[1][0].conj() * a;
        let c2 = u[0][1].conj() * b + u[1][1].conj() * a;
        let jf = j as f64;
        let p1 = Complex64::cis((jf * self.gamma1) % (2.0 * PI)) * c1;
        let p2 = Complex64::cis((jf * self.gamma2) % (2.0 * PI)) * c2;
        ReducedState::from_parts(u[0][0] * p1 + u[0][1] * p2, u[1][0] * p1 + u[1][1] * p2)
    }

    /// `‖T·u_k - λ_k·u_k‖` for both columns.
    pub fn eigen_residuals(&self, m: &IterationMatrix) -> [f64; 2] {
        let e = m.entries();
        let lambdas = self.eigenvalues();
        let mut out = [0.0; 2];
        for (k, slot) in out.iter_mut().enumerate() {
            let v = self.eigenvector(k);
            let r0 = e[0][0] * v[0] + e[0][1] * v[1] - lambdas[k] * v[0];
            let r1 = e[1][0] * v[0] + e[1][1] * v[1] - lambdas[k] * v[1];
            *slot = (r0.norm_sqr() + r1.norm_sqr()).sqrt();
        }
        out
    }

    /// Largest entry of `|u†u - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        IterationMatrix::from_entries(self.u).unitarity_defect()
    }
}

/// Eigenphases from the closed-form `δ`, eigenvectors from the entries of `m`.
///
/// Fails with [`Error::DegenerateSpectrum`] when `|e^{iγ₁} - e^{iγ₂}|` is
/// below [`DEGENERACY_THRESHOLD`]; callers should fall back to direct iteration.
pub fn diagonalize(m: &IterationMatrix, config: &ProblemConfig) -> Result<Spectrum> {
    let (cos_delta, sin_delta) = half_separation_trig(config);
    let separation = 2.0 * sin_delta;
    if separation <= DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateSpectrum {
            separation,
            threshold: DEGENERACY_THRESHOLD,
        });
    }
    let delta = sin_delta.atan2(cos_delta);
    let centre = 0.5 * (PI + config.theta());
    let gamma1 = canonical_theta(centre + delta);
    let gamma2 = canonical_theta(centre - delta);

    let v1 = eigenvector(m, Complex64::cis(gamma1));
    let v2 = eigenvector(m, Complex64::cis(gamma2));
    Ok(Spectrum {
        gamma1,
        gamma2,
        delta,
        u: [[v1[0], v2[0]], [v1[1], v2[1]]],
    })
}

/// State after `j` iterations without stepping.
pub fn closed_form_state(
    config: &ProblemConfig,
    initial: &ReducedState,
    j: u64,
) -> Result<ReducedState> {
    let m = build_iteration_matrix(config);
    let spectrum = diagonalize(&m, config)?;
    Ok(spectrum.state_after(initial, j))
}

/// `γ₁ - γ₂ = 2δ` before modular reduction, in `[0, 2π]`.
pub fn eigenphase_separation(config: &ProblemConfig) -> f64 {
    2.0 * half_separation(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{custom_initial_state, uniform_initial_state};
    use crate::reduced::iterate;
    use nalgebra::{Matrix2, Schur};
    use std::f64::consts::TAU;

    fn cfg(n: u64, theta: f64) -> ProblemConfig {
        ProblemConfig::new(n, theta).unwrap()
    }

    /// Generic numeric eigensolve, sorted by phase in [0, 2π).
    fn oracle_phases(config: &ProblemConfig) -> [f64; 2] {
        let e = *build_iteration_matrix(config).entries();
        let m = Matrix2::new(e[0][0], e[0][1], e[1][0], e[1][1]);
        let ev = Schur::new(m).eigenvalues().expect("complex schur");
        let mut p = [canonical_theta(ev[0].arg()), canonical_theta(ev[1].arg())];
        p.sort_by(f64::total_cmp);
        p
    }

    fn mod_tau_diff(x: f64, y: f64) -> f64 {
        let d = (x - y).rem_euclid(TAU);
        d.min(TAU - d)
    }

    #[test]
    fn standard_grover_phases() {
        let c = cfg(100, PI);
        let psi = c.rotation_angle().psi;
        let s = diagonalize(&build_iteration_matrix(&c), &c).unwrap();
        let mut got = [s.gamma1(), s.gamma2()];
        got.sort_by(f64::total_cmp);
        assert!((got[0] - psi).abs() < 1e-13);
        assert!((got[1] - (TAU - psi)).abs() < 1e-13);
        assert!(mod_tau_diff(s.gamma1() + s.gamma2(), 0.0) < 1e-12);
    }

    #[test]
    fn third_pi_phases_match_generic_eigensolve() {
        let c = cfg(100, PI / 3.0);
        let s = diagonalize(&build_iteration_matrix(&c), &c).unwrap();
        assert!((s.delta() - (-0.49f64).acos()).abs() < 1e-14);
        let oracle = oracle_phases(&c);
        assert!((s.gamma1() - oracle[1]).abs() < 1e-12);
        assert!((s.gamma2() - oracle[0]).abs() < 1e-12);
        // frozen from the numeric eigensolve above
        assert!((s.gamma1() - 4.177_281_182_122_24).abs() < 1e-12);
        assert!((s.gamma2() - 0.011_509_022_664_150_77).abs() < 1e-12);
    }

    #[test]
    fn grid_invariants() {
        for n in [2u64, 3, 4, 100, 1024] {
            for k in 0..100 {
                let c = cfg(n, TAU * k as f64 / 100.0);
                let m = build_iteration_matrix(&c);
                let s = diagonalize(&m, &c).unwrap();
                let [r1, r2] = s.eigen_residuals(&m);
                assert!(r1 < 1e-12 && r2 < 1e-12, "n={n} k={k}: {r1} {r2}");
                assert!(s.unitarity_defect() < 1e-12);
                assert!(mod_tau_diff(s.gamma1() + s.gamma2(), PI + c.theta()) < 1e-12);
                let product = Complex64::cis(s.gamma1() + s.gamma2());
                assert!((product + c.phase()).norm() < 1e-12);
                let cos_delta = -c.rotation_angle().cos_psi * (c.theta() / 2.0).sin();
                assert!((s.delta().cos() - cos_delta).abs() < 1e-12);
                let oracle = oracle_phases(&c);
                let mut got = [s.gamma1(), s.gamma2()];
                got.sort_by(f64::total_cmp);
                assert!(mod_tau_diff(got[0], oracle[0]) < 1e-10);
                assert!(mod_tau_diff(got[1], oracle[1]) < 1e-10);
            }
        }
    }

    #[test]
    fn printed_sine_formula_with_half_angle_reading() {
        for n in [4u64, 100, 1024] {
            for k in 0..50 {
                let c = cfg(n, TAU * (k as f64 + 0.25) / 50.0);
                let s = diagonalize(&build_iteration_matrix(&c), &c).unwrap();
                let cp = c.rotation_angle().cos_psi;
                let th = c.theta();
                let root = (1.0 - cp * cp * (th / 2.0).sin().powi(2)).sqrt();
                let plus = (-th.sin() * cp + 2.0 * root * (th / 2.0).sin()) / 2.0;
                let minus = (-th.sin() * cp - 2.0 * root * (th / 2.0).sin()) / 2.0;
                // the "+" root belongs to γ₂ under our labeling
                assert!((s.gamma2().sin() - plus).abs() < 1e-10);
                assert!((s.gamma1().sin() - minus).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_at_zero_is_identity() {
        let init =
            custom_initial_state(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        let out = closed_form_state(&cfg(37, 1.3), &init, 0).unwrap();
        assert!(out.max_component_diff(&init) < 1e-14);
    }

    #[test]
    fn closed_form_standard_grover() {
        let c = cfg(100, PI);
        let out = closed_form_state(&c, &uniform_initial_state(100).unwrap(), 7).unwrap();
        assert!((out.b().norm() - (7.5 * c.rotation_angle().psi).sin()).abs() < 1e-12);
        assert!((out.b().norm() - 0.997_669_484_527_616).abs() < 1e-12);
    }

    #[test]
    fn closed_form_tracks_iteration() {
        for n in [4u64, 100, 1024] {
            for theta in [0.1, PI / 4.0, PI / 3.0, PI / 1.1, PI] {
                let c = cfg(n, theta);
                let init = uniform_initial_state(n).unwrap();
                let t = iterate(&c, &init, 1000);
                let s = diagonalize(&build_iteration_matrix(&c), &c).unwrap();
                for (j, want) in t.states().iter().enumerate() {
                    let got = s.state_after(&init, j as u64);
                    assert!(
                        got.max_component_diff(want) < 1e-10,
                        "n={n} θ={theta} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_tracks_long_iteration() {
        let c = cfg(100, PI / 4.0);
        let init = uniform_initial_state(100).unwrap();
        let t = iterate(&c, &init, 10_000);
        let s = diagonalize(&build_iteration_matrix(&c), &c).unwrap();
        for j in (0..=10_000).step_by(97).chain([10_000]) {
            let got = s.state_after(&init, j as u64);
            assert!(got.max_component_diff(&t.states()[j]) < 1e-10, "j={j}");
        }
    }

    #[test]
    fn separation_values() {
        let c = cfg(100, PI);
        let want = TAU - 2.0 * c.rotation_angle().psi;
        assert!((eigenphase_separation(&c) - want).abs() < 1e-13);
        assert!((want - 5.882_515_622_533_347).abs() < 1e-12);

        let sep = eigenphase_separation(&cfg(100, PI / 3.0));
        assert!((sep - 4.165_772_159_458_089).abs() < 1e-12);
        assert!((2.0 * TAU - 3.0 * sep - 0.069_054_135_984_906).abs() < 1e-11);

        assert!((eigenphase_separation(&cfg(100, 0.0)) - PI).abs() < 1e-15);
    }

    #[test]
    fn degenerate_spectrum_is_refused() {
        // |λ₁ - λ₂| = 2 sinψ at θ = π, about 9.3e-10 for the largest n
        let c = cfg(u64::MAX, PI);
        let m = build_iteration_matrix(&c);
        match diagonalize(&m, &c) {
            Err(Error::DegenerateSpectrum { separation, .. }) => {
                assert!(separation < DEGENERACY_THRESHOLD && separation > 9e-10)
            }
            other => panic!("expected degeneracy, got {other:?}"),
        }
        let init = uniform_initial_state(u64::MAX).unwrap();
        assert!(closed_form_state(&c, &init, 3).is_err());

        // still resolvable at 2^62
        let c = cfg(1u64 << 62, PI);
        assert!(diagonalize(&build_iteration_matrix(&c), &c).is_ok());
    }
}
