//! θ-sweeps, peak counting, trajectory statistics and figure datasets.
//!
//! Amplitudes are indexed by the number of iterations applied: `|B_4|` is
//! the marked amplitude after four applications of the iteration.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::full::full_iterate_with_limit;
use crate::model::{uniform_initial_state, ProblemConfig, ReducedState};
use crate::reduced::{build_iteration_matrix, iterate, IterationMatrix, Trajectory};
use crate::spectral::diagonalize;
use crate::table::{Cell, Table};
use crate::DEFAULT_MAX_N;

/// Search-space size used by every figure.
pub const FIGURE_N: u64 = 100;
/// Default resolution of θ-sweeps over `[0, 2π]`.
pub const DEFAULT_GRID_POINTS: usize = 2000;
/// Last `j` of the `|B_{j+1}|` versus `j` figures.
pub const FIGURE_J_MAX: usize = 100;

/// How a trajectory is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Repeated application of the 2×2 matrix.
    Reduced,
    /// Closed form through the eigenbasis, falling back to `Reduced` on a
    /// degenerate spectrum.
    #[default]
    Spectral,
    /// All `N` amplitudes.
    Full,
}

pub fn trajectory(
    engine: Engine,
    config: &ProblemConfig,
    initial: &ReducedState,
    j_max: usize,
) -> Result<Trajectory> {
    trajectory_with_limit(engine, config, initial, j_max, DEFAULT_MAX_N)
}

/// [`trajectory`] with an explicit size guard for the full engine.
pub fn trajectory_with_limit(
    engine: Engine,
    config: &ProblemConfig,
    initial: &ReducedState,
    j_max: usize,
    max_n: u64,
) -> Result<Trajectory> {
    match engine {
        Engine::Reduced => Ok(iterate(config, initial, j_max)),
        Engine::Full => full_iterate_with_limit(config, initial, j_max, max_n),
        Engine::Spectral => match diagonalize(&build_iteration_matrix(config), config) {
            Ok(spectrum) => {
                let states = std::iter::once(*initial)
                    .chain((1..=j_max as u64).map(|j| spectrum.state_after(initial, j)))
                    .collect();
                Ok(Trajectory::new(*config, states))
            }
            Err(Error::DegenerateSpectrum { .. }) => Ok(iterate(config, initial, j_max)),
            Err(e) => Err(e),
        },
    }
}

/// `|B|` after `applications` iterations, via the closed form when the
/// spectrum allows it.
pub fn marked_amplitude_after(
    config: &ProblemConfig,
    initial: &ReducedState,
    applications: u64,
) -> f64 {
    match diagonalize(&build_iteration_matrix(config), config) {
        Ok(spectrum) => spectrum.state_after(initial, applications).b().norm(),
        Err(_) => iterate(config, initial, applications as usize)
            .last()
            .b()
            .norm(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSweep {
    n: u64,
    applications: u64,
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl ThetaSweep {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of iterations behind each reported `|B|`.
    pub fn applications(&self) -> u64 {
        self.applications
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Columns `theta` and `value_column`.
    pub fn to_table(&self, value_column: &str) -> Table {
        let mut t = Table::new(["theta", value_column]);
        for (&theta, &v) in self.grid.iter().zip(&self.values) {
            t.push(vec![Cell::Float(theta), Cell::Float(v)]);
        }
        t
    }
}

fn check_window(lo: f64, hi: f64, min: f64, max: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidWindow {
            lo,
            hi,
            reason: "bounds must be finite",
        });
    }
    if lo >= hi {
        return Err(Error::InvalidWindow {
            lo,
            hi,
            reason: "lower bound must be below upper bound",
        });
    }
    if lo < min || hi > max {
        return Err(Error::InvalidWindow {
            lo,
            hi,
            reason: "window extends past the available range",
        });
    }
    Ok(())
}

/// `|B_applications|` from the uniform start on `grid_points` evenly spaced
/// θ values covering `window` (endpoints included). Grid points are computed
/// in parallel and assembled in order.
pub fn theta_sweep(
    n: u64,
    applications: u64,
    grid_points: usize,
    window: (f64, f64),
) -> Result<ThetaSweep> {
    theta_sweep_with_engine(Engine::Spectral, n, applications, grid_points, window)
}

/// [`theta_sweep`] computing each point with the given engine.
pub fn theta_sweep_with_engine(
    engine: Engine,
    n: u64,
    applications: u64,
    grid_points: usize,
    window: (f64, f64),
) -> Result<ThetaSweep> {
    if grid_points < 3 {
        return Err(Error::GridTooSmall(grid_points));
    }
    let (lo, hi) = window;
    check_window(lo, hi, 0.0, TAU)?;
    let initial = uniform_initial_state(n)?;
    let last = (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points)
        .map(|i| {
            if i == grid_points - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect();
    let values = grid
        .par_iter()
        .map(|&theta| {
            let config = ProblemConfig::new(n, theta)?;
            match engine {
                Engine::Spectral => Ok(marked_amplitude_after(&config, &initial, applications)),
                _ => Ok(
                    trajectory(engine, &config, &initial, applications as usize)?
                        .last()
                        .b()
                        .norm(),
                ),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ThetaSweep {
        n,
        applications,
        grid,
        values,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    pub count: usize,
    pub locations: Vec<f64>,
    pub window: (f64, f64),
}

/// Strict interior local maxima of `values` as inclusive index runs. A run
/// of exactly equal values higher than both of its neighbours is one peak.
fn peak_runs(values: &[f64]) -> Vec<(usize, usize)> {
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] > values[i - 1] {
            let mut r = i;
            while r + 1 < values.len() && values[r + 1] == values[i] {
                r += 1;
            }
            if r + 1 < values.len() && values[r + 1] < values[i] {
                peaks.push((i, r));
            }
            i = r + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// Peaks of a sweep lying strictly inside `window`. A plateau is reported
/// at its leftmost θ and only counted when the whole plateau is inside.
pub fn count_peaks(sweep: &ThetaSweep, window: (f64, f64)) -> Result<PeakReport> {
    let (lo, hi) = window;
    let first = sweep.grid[0];
    let last = *sweep.grid.last().expect("sweeps have at least 3 points");
    check_window(lo, hi, first, last)?;
    let locations: Vec<f64> = peak_runs(&sweep.values)
        .into_iter()
        .filter(|&(l, r)| sweep.grid[l] > lo && sweep.grid[r] < hi)
        .map(|(l, _)| sweep.grid[l])
        .collect();
    Ok(PeakReport {
        count: locations.len(),
        locations,
        window,
    })
}

/// Index of the first maximum (`largest`) or first minimum of `values[from..]`.
fn first_extremum(values: &[f64], from: usize, largest: bool) -> usize {
    let mut best = from;
    for (j, &v) in values.iter().enumerate().skip(from) {
        if (largest && v > values[best]) || (!largest && v < values[best]) {
            best = j;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStats {
    pub max_norm: f64,
    pub argmax_j: usize,
    /// Smallest `|B_j|` over `j ≥ 1`.
    pub min_norm_excluding_start: f64,
    pub argmin_j: usize,
    /// `|B_j|` for `j = 0 ..= j_max`.
    pub values: Vec<f64>,
}

/// Statistics of `|B_j|` from the uniform start. The maximum is taken over
/// all `j`, the minimum over `j ≥ 1`; ties resolve to the smallest `j`.
pub fn trajectory_stats(config: &ProblemConfig, j_max: usize) -> Result<TrajectoryStats> {
    if j_max < 1 {
        return Err(Error::NoIterations);
    }
    let initial = uniform_initial_state(config.n())?;
    let values = trajectory(Engine::Spectral, config, &initial, j_max)?.marked_norms();
    let argmax_j = first_extremum(&values, 0, true);
    let argmin_j = first_extremum(&values, 1, false);
    Ok(TrajectoryStats {
        max_norm: values[argmax_j],
        argmax_j,
        min_norm_excluding_start: values[argmin_j],
        argmin_j,
        values,
    })
}

/// The five standard plots, all at `N = 100` from the uniform start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Figure {
    /// `|B|` versus θ over `[0, 2π]` after a fixed number of iterations.
    ThetaSweep { applications: u64 },
    /// `|B_{j+1}|` versus `j = 0 ..= 100` at a fixed θ.
    Trajectory { theta: f64 },
}

impl Figure {
    pub fn from_id(id: u32) -> Result<Self> {
        Ok(match id {
            1 => Figure::ThetaSweep { applications: 4 },
            2 => Figure::ThetaSweep { applications: 7 },
            3 => Figure::Trajectory { theta: PI / 4.0 },
            4 => Figure::Trajectory { theta: PI / 3.0 },
            5 => Figure::Trajectory { theta: PI / 1.1 },
            other => return Err(Error::UnknownFigure(other)),
        })
    }

    pub fn dataset(&self, grid_points: usize) -> Result<Table> {
        match *self {
            Figure::ThetaSweep { applications } => {
                let sweep = theta_sweep(FIGURE_N, applications, grid_points, (0.0, TAU))?;
                Ok(sweep.to_table(&format!("abs_B{applications}")))
            }
            Figure::Trajectory { theta } => {
                let config = ProblemConfig::new(FIGURE_N, theta)?;
                let initial = uniform_initial_state(FIGURE_N)?;
                let t = trajectory(Engine::Spectral, &config, &initial, FIGURE_J_MAX + 1)?;
                let mut table = Table::new(["j", "applications", "abs_B"]);
                for (j, s) in t.states().iter().enumerate().skip(1) {
                    table.push(vec![
                        Cell::Int(j as i64 - 1),
                        Cell::Int(j as i64),
                        Cell::Float(s.b().norm()),
                    ]);
                }
                Ok(table)
            }
        }
    }
}

/// Dataset for figure `id` (1 to 5) at the default sweep resolution.
pub fn figure_dataset(id: u32) -> Result<Table> {
    Figure::from_id(id)?.dataset(DEFAULT_GRID_POINTS)
}

/// Columns `j, re_B, im_B, abs_B, re_A, im_A, abs_A, norm_defect`.
pub fn trajectory_table(t: &Trajectory) -> Table {
    let mut table = Table::new([
        "j",
        "re_B",
        "im_B",
        "abs_B",
        "re_A",
        "im_A",
        "abs_A",
        "norm_defect",
    ]);
    for (j, s) in t.states().iter().enumerate() {
        let (b, a) = (s.b(), s.a());
        table.push(vec![
            Cell::Int(j as i64),
            Cell::Float(b.re),
            Cell::Float(b.im),
            Cell::Float(b.norm()),
            Cell::Float(a.re),
            Cell::Float(a.im),
            Cell::Float(a.norm()),
            Cell::Float(s.norm_defect()),
        ]);
    }
    table
}

/// Columns `row, col, re, im`, row-major.
pub fn matrix_table(m: &IterationMatrix) -> Table {
    let mut table = Table::new(["row", "col", "re", "im"]);
    for (i, row) in m.entries().iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            table.push(vec![
                Cell::Int(i as i64),
                Cell::Int(j as i64),
                Cell::Float(e.re),
                Cell::Float(e.im),
            ]);
        }
    }
    table
}
