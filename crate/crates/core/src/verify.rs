//! Self-check suite: cross-checks the three computation routes against each
//! other and against the known behaviour of the standard figures.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::analysis::{count_peaks, theta_sweep, trajectory_stats, DEFAULT_GRID_POINTS};
use crate::error::Result;
use crate::full::{apply_diffusion, full_iterate, FullState};
use crate::model::{custom_initial_state, ProblemConfig, ReducedState};
use crate::reduced::{
    build_iteration_matrix, grover_reference_amplitude, iterate, IterationMatrix,
};
use crate::spectral::diagonalize;

/// Largest `|B_j|`, `j = 1..=100`, at `N = 100`, `θ = π/1.1`, from the
/// full-state simulation.
pub const ROBUST_MAX_ABS_B: f64 = 0.814_539_235_687_905_6;
/// Iteration count at which [`ROBUST_MAX_ABS_B`] occurs.
pub const ROBUST_ARGMAX: usize = 57;
/// Bound on `max_{j=1..50} ||B_{j+3}| - |B_j||` at `N = 100`, `θ = π/3`
/// (full-state value 3.9004537e-3).
pub const PERIOD3_BOUND: f64 = 3.9005e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn below(name: &'static str, measured: f64, limit: f64) -> Self {
        Self {
            name,
            passed: measured < limit,
            detail: format!("{measured:.3e} < {limit:.0e}"),
        }
    }
}

const SIZES: [u64; 3] = [4, 100, 1024];
const PHASES: [f64; 5] = [0.0, PI / 4.0, PI / 3.0, PI / 1.1, PI];

fn cfg(n: u64, theta: f64) -> Result<ProblemConfig> {
    ProblemConfig::new(n, theta)
}

fn uniform(n: u64) -> ReducedState {
    crate::model::uniform_initial_state(n).expect("n >= 2")
}

/// Deterministic normalized vector; spreads phases and magnitudes without
/// pulling in an RNG.
fn scrambled_state(n: usize, salt: f64) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = i as f64 + salt;
            Complex64::new((x * 12.9898).sin(), (x * 78.233 + 1.0).cos())
        })
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

fn theta_pi_reduction() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for n in SIZES {
        let t = iterate(&cfg(n, PI)?, &uniform(n), 50);
        for (j, s) in t.states().iter().enumerate() {
            let r = grover_reference_amplitude(n, j as u64)?;
            worst = worst.max((s.b().norm() - r.abs()).abs());
        }
    }
    Ok(CheckOutcome::below(
        "theta=pi reduces to sin((j+1/2)psi)",
        worst,
        1e-10,
    ))
}

fn route_agreement() -> Result<[CheckOutcome; 2]> {
    let mut full_gap = 0.0f64;
    let mut spectral_gap = 0.0f64;
    for n in SIZES {
        for theta in PHASES {
            let c = cfg(n, theta)?;
            let init = uniform(n);
            let reduced = iterate(&c, &init, 200);
            full_gap = full_gap.max(reduced.max_component_diff(&full_iterate(&c, &init, 200)?));
            let spectrum = diagonalize(&build_iteration_matrix(&c), &c)?;
            for (j, s) in reduced.states().iter().enumerate() {
                spectral_gap =
                    spectral_gap.max(spectrum.state_after(&init, j as u64).max_component_diff(s));
            }
        }
    }
    Ok([
        CheckOutcome::below("reduced iteration == full simulation", full_gap, 1e-11),
        CheckOutcome::below("closed form == reduced iteration", spectral_gap, 1e-10),
    ])
}

fn spectral_invariants() -> Result<[CheckOutcome; 2]> {
    let mut sum_gap = 0.0f64;
    let mut residual = 0.0f64;
    for n in [4u64, 100, 1_000_000] {
        for k in 0..1000 {
            let c = cfg(n, TAU * k as f64 / 1000.0)?;
            let m = build_iteration_matrix(&c);
            let s = diagonalize(&m, &c)?;
            let d = (s.gamma1() + s.gamma2() - PI - c.theta()).rem_euclid(TAU);
            sum_gap = sum_gap.max(d.min(TAU - d));
            let [r1, r2] = s.eigen_residuals(&m);
            residual = residual.max(r1).max(r2);
        }
    }
    Ok([
        CheckOutcome::below("eigenphase sum rule", sum_gap, 1e-12),
        CheckOutcome::below("eigenvector residual", residual, 1e-12),
    ])
}

fn quarter_pi_band() -> Result<CheckOutcome> {
    let s = trajectory_stats(&cfg(100, PI / 4.0)?, 100)?;
    let max = s.max_norm;
    let min = s.min_norm_excluding_start;
    Ok(CheckOutcome {
        name: "theta=pi/4 max and min",
        passed: (0.13..=0.17).contains(&max) && (0.05..=0.09).contains(&min),
        detail: format!("max {max:.4} in [0.13, 0.17], min {min:.4} in [0.05, 0.09]"),
    })
}

fn third_pi_structure() -> Result<[CheckOutcome; 2]> {
    let s = trajectory_stats(&cfg(100, PI / 3.0)?, 103)?;
    let v = &s.values;
    let (lo, hi) = v[1..=100]
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let d3 = (1..=50)
        .map(|j| (v[j + 3] - v[j]).abs())
        .fold(0.0, f64::max);
    let d1 = (1..=50)
        .map(|j| (v[j + 1] - v[j]).abs())
        .fold(0.0, f64::max);
    Ok([
        CheckOutcome {
            name: "theta=pi/3 band",
            passed: lo >= 0.05 && hi <= 0.19,
            detail: format!("[{lo:.4}, {hi:.4}] within [0.05, 0.19]"),
        },
        CheckOutcome {
            name: "theta=pi/3 period-3 branches",
            passed: d3 < PERIOD3_BOUND && PERIOD3_BOUND <= d1 / 3.0,
            detail: format!(
                "lag-3 {d3:.3e} < {PERIOD3_BOUND:.4e} <= lag-1/3 {:.3e}",
                d1 / 3.0
            ),
        },
    ])
}

fn peak_counts() -> Result<CheckOutcome> {
    let b4 = theta_sweep(100, 4, DEFAULT_GRID_POINTS, (0.0, TAU))?;
    let b7 = theta_sweep(100, 7, DEFAULT_GRID_POINTS, (0.0, TAU))?;
    let c4 = count_peaks(&b4, (0.0, PI))?.count;
    let c7 = count_peaks(&b7, (0.0, PI))?.count;
    Ok(CheckOutcome {
        name: "peaks in (0, pi) of |B4| and |B7|",
        passed: c4 == 1 && c7 == 3,
        detail: format!("{c4} and {c7}, expected 1 and 3"),
    })
}

fn near_pi_robustness() -> Result<CheckOutcome> {
    let norms = full_iterate(&cfg(100, PI / 1.1)?, &uniform(100), 100)?.marked_norms();
    let (argmax, max) =
        norms.iter().enumerate().skip(1).fold(
            (0, 0.0f64),
            |best, (j, &x)| if x > best.1 { (j, x) } else { best },
        );
    Ok(CheckOutcome {
        name: "theta=pi/1.1 reaches a large amplitude",
        passed: max > 0.5 && (max - ROBUST_MAX_ABS_B).abs() < 1e-10 && argmax == ROBUST_ARGMAX,
        detail: format!("max {max:.16} at j={argmax}"),
    })
}

fn structural() -> Result<Vec<CheckOutcome>> {
    let mut unitarity = 0.0f64;
    let mut norm_drift = 0.0f64;
    let mut involution = 0.0f64;
    for n in SIZES {
        for k in 0..64 {
            let c = cfg(n, TAU * k as f64 / 64.0)?;
            unitarity = unitarity.max(build_iteration_matrix(&c).unitarity_defect());
            norm_drift = norm_drift.max(iterate(&c, &uniform(n), 200).max_norm_defect());
        }
        let m = build_iteration_matrix(&cfg(n, 0.0)?);
        for salt in 0..16 {
            let v = scrambled_state(2, salt as f64 * 3.7);
            let s = custom_initial_state(v[0], v[1])?;
            involution = involution.max(m.apply(&m.apply(&s)).max_component_diff(&s));
        }
    }

    let mut d_involution = 0.0f64;
    let mut d_norm = 0.0f64;
    for n in [2usize, 3, 17, 100, 1024] {
        let v = scrambled_state(n, n as f64);
        let once = apply_diffusion(FullState::from_amplitudes(v.clone(), 0)?);
        d_norm = d_norm.max((once.norm_sqr() - 1.0).abs());
        let twice = apply_diffusion(once);
        for (x, y) in twice.amplitudes().iter().zip(&v) {
            d_involution = d_involution.max((x - y).norm());
        }
    }

    // full_iterate projects after every step, which enforces the symmetry
    let mut symmetric = true;
    for n in [4u64, 100] {
        for theta in PHASES {
            let c = cfg(n, theta)?;
            let v = scrambled_state(2, theta);
            let init = custom_initial_state(v[0], v[1])?;
            symmetric &= full_iterate(&c, &init, 1000).is_ok();
        }
    }

    let mut dense = 0.0f64;
    for n in 2..=64usize {
        let v = scrambled_state(n, 0.5);
        let fast = apply_diffusion(FullState::from_amplitudes(v.clone(), 0)?);
        let nf = n as f64;
        for i in 0..n {
            let lit: Complex64 = (0..n)
                .map(|j| v[j] * if i == j { 2.0 / nf - 1.0 } else { 2.0 / nf })
                .sum();
            dense = dense.max((lit - fast.amplitudes()[i]).norm());
        }
    }

    Ok(vec![
        CheckOutcome::below("iteration matrix unitarity", unitarity, 1e-13),
        CheckOutcome::below("diffusion involution", d_involution, 1e-13),
        CheckOutcome::below("diffusion norm preservation", d_norm, 1e-13),
        CheckOutcome {
            name: "unmarked symmetry over 1000 steps",
            passed: symmetric,
            detail: "relative spread < 1e-10".into(),
        },
        CheckOutcome::below("trajectory norm conservation", norm_drift, 1e-12),
        CheckOutcome::below("theta=0 double step is identity", involution, 1e-12),
        CheckOutcome::below("dense diffusion matrix (N <= 64)", dense, 1e-13),
    ])
}

/// Runs every check. Errors are only returned for failures that prevent a
/// check from running at all.
pub fn run_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = vec![theta_pi_reduction()?];
    out.extend(route_agreement()?);
    out.extend(spectral_invariants()?);
    out.push(quarter_pi_band()?);
    out.extend(third_pi_structure()?);
    out.push(peak_counts()?);
    out.push(near_pi_robustness()?);
    out.extend(structural()?);
    Ok(out)
}

/// Iteration matrix with `2√(N-2)/N` instead of `2√(N-1)/N` in the lower-left
/// entry. Not unitary for any `N`.
pub fn literal_recurrence_matrix(config: &ProblemConfig) -> IterationMatrix {
    let mut e = *build_iteration_matrix(config).entries();
    let n = config.n() as f64;
    e[1][0] = 2.0 * (n - 2.0).sqrt() / n * config.phase();
    IterationMatrix::from_entries(e)
}

/// Largest componentwise gap over `j ≤ j_max` between the full simulation
/// and iteration with [`literal_recurrence_matrix`], from the uniform start.
pub fn literal_recurrence_residual(config: &ProblemConfig, j_max: usize) -> Result<f64> {
    let init = uniform(config.n());
    let truth = full_iterate(config, &init, j_max)?;
    let m = literal_recurrence_matrix(config);
    let mut s = init;
    let mut worst = 0.0f64;
    for expected in truth.states() {
        worst = worst.max(s.max_component_diff(expected));
        s = m.apply(&s);
    }
    Ok(worst)
}
