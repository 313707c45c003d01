use std::fs::File;
use std::io::{BufWriter, Write};

use grover_phase::analysis::{matrix_table, trajectory_table};
use grover_phase::verify::{literal_recurrence_residual, run_suite};
use grover_phase::{
    build_iteration_matrix, theta_sweep_with_engine, trajectory_with_limit, Error, ProblemConfig,
    Table,
};

use crate::args::{Command, RunConfig};

/// Exit status for a failure after arguments were accepted.
fn failure_code(e: &Error) -> i32 {
    if e.is_numerical() || matches!(e, Error::Io(_)) {
        2
    } else {
        1
    }
}

fn emit<W: Write>(table: &Table, config: &RunConfig, out: &mut W) -> Result<(), Error> {
    match &config.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => table.write_csv(out),
    }
}

fn verify<W: Write, E: Write>(literal_recurrence: bool, out: &mut W, err: &mut E) -> i32 {
    let outcomes = match run_suite() {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: verification could not run: {e}");
            return failure_code(&e);
        }
    };
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        let _ = writeln!(out, "{status}  {:<width$}  {}", o.name, o.detail);
    }
    let _ = writeln!(
        out,
        "{} of {} checks passed",
        outcomes.len() - failed,
        outcomes.len()
    );

    if literal_recurrence {
        let config = ProblemConfig::new(100, std::f64::consts::PI).expect("valid");
        match literal_recurrence_residual(&config, 20) {
            Ok(r) => {
                let _ = writeln!(
                    out,
                    "note  recurrence with 2*sqrt(N-2)/N vs full simulation (N=100, theta=pi, j<=20): max gap {r:.6e}"
                );
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return failure_code(&e);
            }
        }
    }
    if failed > 0 {
        2
    } else {
        0
    }
}

/// Executes a validated invocation. Data goes to `out` (or the output file),
/// diagnostics to `err`. Returns the process exit status.
pub fn run<W: Write, E: Write>(config: &RunConfig, out: &mut W, err: &mut E) -> i32 {
    let table = match &config.command {
        Command::Verify { literal_recurrence } => return verify(*literal_recurrence, out, err),
        Command::Matrix { config } => Ok(matrix_table(&build_iteration_matrix(config))),
        Command::Trajectory {
            config,
            initial,
            j_max,
            engine,
            max_n,
        } => trajectory_with_limit(*engine, config, initial, *j_max, *max_n)
            .map(|t| trajectory_table(&t)),
        Command::Sweep {
            n,
            report,
            grid,
            window,
            engine,
        } => theta_sweep_with_engine(*engine, *n, *report, *grid, *window)
            .map(|s| s.to_table("abs_B")),
        Command::Figure { figure, grid, .. } => figure.dataset(*grid),
    };
    match table.and_then(|t| emit(&t, config, out)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            failure_code(&e)
        }
    }
}
