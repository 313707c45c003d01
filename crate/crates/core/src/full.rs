//! Brute-force simulation over all `N` amplitudes.
//!
//! This is the ground truth for the reduced model: nothing here assumes the
//! state stays in the two-dimensional subspace. [`project`] checks that it
//! did after every iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ProblemConfig, ReducedState, NORMALIZATION_TOLERANCE};
use crate::reduced::Trajectory;

/// Largest `N` [`full_iterate`] will materialize (2²⁴ amplitudes, 256 MiB).
pub const DEFAULT_MAX_N: u64 = 1 << 24;

/// Relative tolerance on the spread of the unmarked amplitudes in [`project`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    amplitudes: Vec<Complex64>,
    marked: usize,
}

impl FullState {
    /// Checks the marked index and normalization (within 1e-9).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>, marked: usize) -> Result<Self> {
        let n = amplitudes.len() as u64;
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        if marked >= amplitudes.len() {
            return Err(Error::MarkedOutOfRange {
                marked: marked as u64,
                n,
            });
        }
        let state = Self { amplitudes, marked };
        let norm_sqr = state.norm_sqr();
        let defect = norm_sqr - 1.0;
        if defect.is_nan() || defect.abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr, defect });
        }
        Ok(state)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn unmarked(&self) -> impl Iterator<Item = &Complex64> {
        let marked = self.marked;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != marked)
            .map(|(_, a)| a)
    }
}

/// Neumaier-compensated sum. Plain summation of many equal amplitudes rounds
/// in the same direction every time and the bias shows up as norm drift over
/// long runs.
fn compensated_sum<'a>(values: impl Iterator<Item = &'a Complex64>) -> Complex64 {
    fn add(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }
    let (mut re, mut re_c, mut im, mut im_c) = (0.0, 0.0, 0.0, 0.0);
    for v in values {
        add(&mut re, &mut re_c, v.re);
        add(&mut im, &mut im_c, v.im);
    }
    Complex64::new(re + re_c, im + im_c)
}

/// Expands `(b, a)` to `b` at the marked index and `a/√(N-1)` everywhere else.
///
/// Allocates `N` amplitudes; see [`DEFAULT_MAX_N`].
pub fn lift(reduced: &ReducedState, config: &ProblemConfig) -> FullState {
    let n = config.n() as usize;
    let marked = config.marked() as usize;
    let spread = reduced.a() / ((n - 1) as f64).sqrt();
    let mut amplitudes = vec![spread; n];
    amplitudes[marked] = reduced.b();
    FullState { amplitudes, marked }
}

/// `|n₀⟩ → e^{iθ}|n₀⟩`
pub fn apply_phase_oracle(mut state: FullState, theta: f64) -> FullState {
    state.amplitudes[state.marked] *= Complex64::cis(theta);
    state
}

/// Inversion about the mean, `a_i → 2·mean - a_i`, in O(N).
pub fn apply_diffusion(mut state: FullState) -> FullState {
    let n = state.amplitudes.len() as f64;
    let mean = compensated_sum(state.amplitudes.iter()) / n;
    let twice = 2.0 * mean;
    for a in state.amplitudes.iter_mut() {
        *a = twice - *a;
    }
    state
}

/// Collapses a state whose unmarked amplitudes are all equal back to `(b, a)`.
///
/// Fails with [`Error::SymmetryViolation`] when any unmarked amplitude is
/// farther than 1e-10 (relative to the largest amplitude) from their mean.
pub fn project(state: &FullState) -> Result<ReducedState> {
    let n = state.amplitudes.len();
    let rest = (n - 1) as f64;
    let common = compensated_sum(state.unmarked()) / rest;
    let scale = state
        .amplitudes
        .iter()
        .map(|a| a.norm())
        .fold(0.0, f64::max);
    let spread = state
        .unmarked()
        .map(|a| (a - common).norm())
        .fold(0.0, f64::max);
    let deviation = if scale > 0.0 { spread / scale } else { 0.0 };
    if deviation > SYMMETRY_TOLERANCE {
        return Err(Error::SymmetryViolation {
            deviation,
            tolerance: SYMMETRY_TOLERANCE,
        });
    }
    Ok(ReducedState::from_parts(
        state.amplitudes[state.marked],
        common * rest.sqrt(),
    ))
}

pub fn full_iterate(
    config: &ProblemConfig,
    initial: &ReducedState,
    j_max: usize,
) -> Result<Trajectory> {
    full_iterate_with_limit(config, initial, j_max, DEFAULT_MAX_N)
}

/// [`full_iterate`] with an explicit size guard.
pub fn full_iterate_with_limit(
    config: &ProblemConfig,
    initial: &ReducedState,
    j_max: usize,
    max_n: u64,
) -> Result<Trajectory> {
    if config.n() > max_n || config.n() > usize::MAX as u64 {
        return Err(Error::SizeLimit {
            n: config.n(),
            limit: max_n,
        });
    }
    let mut state = lift(initial, config);
    let mut states = Vec::with_capacity(j_max + 1);
    states.push(project(&state)?);
    for _ in 0..j_max {
        state = apply_diffusion(apply_phase_oracle(state, config.theta()));
        states.push(project(&state)?);
    }
    Ok(Trajectory::new(*config, states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{custom_initial_state, uniform_initial_state};
    use crate::reduced::{build_iteration_matrix, iterate, step};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cfg(n: u64, theta: f64) -> ProblemConfig {
        ProblemConfig::new(n, theta).unwrap()
    }

    /// Dense matrix with entries 2/N off the diagonal and 2/N - 1 on it.
    fn dense_diffusion(v: &[Complex64]) -> Vec<Complex64> {
        let n = v.len();
        let nf = n as f64;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { 2.0 / nf - 1.0 } else { 2.0 / nf };
                        d * v[j]
                    })
                    .sum()
            })
            .collect()
    }

    fn max_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn random_state(seed: &[(f64, f64)]) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = seed.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in v.iter_mut() {
            *a /= norm;
        }
        v
    }

    #[test]
    fn lift_examples() {
        let s = lift(&uniform_initial_state(4).unwrap(), &cfg(4, 0.0));
        assert!(s.amplitudes().iter().all(|a| (a - 0.5).norm() < 1e-15));

        let basis = custom_initial_state(c(1.0), c(0.0)).unwrap();
        let s = lift(&basis, &cfg(5, 0.0).with_marked(3).unwrap());
        assert_eq!(s.amplitudes()[3], c(1.0));
        assert_eq!(s.norm_sqr(), 1.0);

        let s = lift(
            &custom_initial_state(c(0.6), c(0.8)).unwrap(),
            &cfg(100, 0.0),
        );
        assert!((s.amplitudes()[1].re - 0.080_403_025_220_736_97).abs() < 1e-15);
    }

    #[test]
    fn phase_oracle_examples() {
        let s = FullState::from_amplitudes(vec![c(0.5); 4], 0).unwrap();
        let out = apply_phase_oracle(s.clone(), PI);
        assert!((out.amplitudes()[0] + 0.5).norm() < 1e-15);
        assert_eq!(&out.amplitudes()[1..], &[c(0.5); 3]);
        assert_eq!(apply_phase_oracle(s, 0.0).amplitudes(), &[c(0.5); 4]);

        let s = lift(&uniform_initial_state(100).unwrap(), &cfg(100, 0.0));
        let out = apply_phase_oracle(s, PI / 2.0);
        assert!((out.amplitudes()[0] - Complex64::new(0.0, 0.1)).norm() < 1e-16);
    }

    #[test]
    fn diffusion_examples() {
        let s = FullState::from_amplitudes(vec![c(-0.5), c(0.5), c(0.5), c(0.5)], 0).unwrap();
        let out = apply_diffusion(s);
        assert_eq!(out.amplitudes(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);

        let u = FullState::from_amplitudes(vec![c(0.5); 4], 2).unwrap();
        assert_eq!(apply_diffusion(u.clone()).amplitudes(), u.amplitudes());
    }

    #[test]
    fn rejects_bad_full_states() {
        assert!(FullState::from_amplitudes(vec![c(1.0)], 0).is_err());
        assert!(FullState::from_amplitudes(vec![c(1.0), c(0.0)], 2).is_err());
        assert!(FullState::from_amplitudes(vec![c(1.0), c(1.0)], 0).is_err());
    }

    #[test]
    fn dense_matrix_agrees_with_mean_formula() {
        for n in 2..=64usize {
            let seed: Vec<(f64, f64)> = (0..n)
                .map(|i| ((i as f64 * 0.37).sin(), (i as f64 * 1.91 + 0.2).cos()))
                .collect();
            let v = random_state(&seed);
            let fast = apply_diffusion(FullState::from_amplitudes(v.clone(), 0).unwrap());
            assert!(
                max_diff(fast.amplitudes(), &dense_diffusion(&v)) < 1e-13,
                "n={n}"
            );
        }
    }

    #[test]
    fn one_full_iteration_is_one_reduced_step() {
        for (n, theta) in [(4, PI), (100, PI), (100, PI / 3.0), (57, 2.0)] {
            let config = cfg(n, theta);
            let init = uniform_initial_state(n).unwrap();
            let full = apply_diffusion(apply_phase_oracle(lift(&init, &config), theta));
            let reduced = step(&init, &build_iteration_matrix(&config));
            assert!(project(&full).unwrap().max_component_diff(&reduced) < 1e-12);
        }
    }

    #[test]
    fn corrupted_symmetry_is_detected() {
        let s = lift(&uniform_initial_state(10).unwrap(), &cfg(10, 0.0));
        let mut amps = s.amplitudes().to_vec();
        amps[3] += 1e-6;
        amps[4] -= 1e-6;
        let bad = FullState::from_amplitudes(amps, 0).unwrap();
        assert!(matches!(
            project(&bad),
            Err(Error::SymmetryViolation { .. })
        ));
    }

    #[test]
    fn size_guard() {
        let config = cfg(1 << 20, PI);
        let init = uniform_initial_state(1 << 20).unwrap();
        assert_eq!(
            full_iterate_with_limit(&config, &init, 1, 1 << 10),
            Err(Error::SizeLimit {
                n: 1 << 20,
                limit: 1 << 10
            })
        );
        let config = cfg(DEFAULT_MAX_N + 1, PI);
        assert!(full_iterate(&config, &init, 0).is_err());
    }

    #[test]
    fn full_iterate_examples() {
        let t = full_iterate(&cfg(4, PI), &uniform_initial_state(4).unwrap(), 1).unwrap();
        assert!((t.last().b() - 1.0).norm() < 1e-15);
        assert!(t.last().a().norm() < 1e-15);

        let config = cfg(100, PI / 3.0);
        let init = uniform_initial_state(100).unwrap();
        let full = full_iterate(&config, &init, 100).unwrap();
        assert!(full.max_component_diff(&iterate(&config, &init, 100)) < 1e-11);

        let config = cfg(1024, PI);
        let full = full_iterate(&config, &uniform_initial_state(1024).unwrap(), 25).unwrap();
        let psi = config.rotation_angle().psi;
        assert!((full.last().b().norm() - (25.5 * psi).sin().abs()).abs() < 1e-10);
    }

    #[test]
    fn marked_index_is_irrelevant() {
        let init = custom_initial_state(
            Complex64::new(0.3, 0.4),
            Complex64::new(0.0, -0.866_025_403_784_438_6),
        )
        .unwrap();
        let base = full_iterate(&cfg(33, 1.1), &init, 60).unwrap();
        for marked in [1u64, 17, 32] {
            let moved =
                full_iterate(&cfg(33, 1.1).with_marked(marked).unwrap(), &init, 60).unwrap();
            assert!(moved.max_component_diff(&base) < 1e-13);
        }
    }

    #[test]
    fn symmetry_survives_long_runs() {
        // project() would fail on the first asymmetric step
        let init = custom_initial_state(c(0.6), Complex64::new(0.0, 0.8)).unwrap();
        let t = full_iterate(&cfg(64, 0.7), &init, 1000).unwrap();
        assert!(t.max_norm_defect() < 1e-12);
    }

    #[test]
    fn compensated_sum_is_exact_on_repeated_values() {
        let x = Complex64::new(0.1, -0.3);
        let v = vec![x; 1000];
        let s = compensated_sum(v.iter());
        assert!((s - x * 1000.0).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn diffusion_is_a_norm_preserving_involution(
            seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..200)
                .prop_filter("nonzero", |v| v.iter().any(|(r, i)| r.abs() + i.abs() > 1e-3))
        ) {
            let v = random_state(&seed);
            let s = FullState::from_amplitudes(v.clone(), 0).unwrap();
            let once = apply_diffusion(s);
            prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-13);
            let twice = apply_diffusion(once);
            prop_assert!(max_diff(twice.amplitudes(), &v) < 1e-13);
        }

        #[test]
        fn lift_then_project_round_trips(
            br in -1.0f64..1.0, bi in -1.0f64..1.0, ar in -1.0f64..1.0, ai in -1.0f64..1.0,
            n in 2u64..500,
        ) {
            let r = (br * br + bi * bi + ar * ar + ai * ai).sqrt();
            prop_assume!(r > 1e-3);
            let s = custom_initial_state(Complex64::new(br / r, bi / r), Complex64::new(ar / r, ai / r)).unwrap();
            let back = project(&lift(&s, &cfg(n, 0.0))).unwrap();
            prop_assert!(back.max_component_diff(&s) < 1e-14);
        }
    }
}
