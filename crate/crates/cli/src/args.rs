use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_phase::analysis::DEFAULT_GRID_POINTS;
use grover_phase::{
    custom_initial_state, uniform_initial_state, Complex64, Engine, Figure, ProblemConfig,
    ReducedState, DEFAULT_MAX_N,
};

use crate::theta::{parse_theta, parse_window};

const BIN: &str = "grover-phase";

#[derive(Debug, Parser)]
#[command(
    name = BIN,
    version,
    about = "Grover search with an arbitrary phase rotation of the marked state"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the 2x2 iteration matrix as row,col,re,im
    Matrix(MatrixArgs),
    /// Amplitudes (B_j, A_j) for j = 0..=jmax
    Trajectory(TrajectoryArgs),
    /// |B| after a fixed number of iterations across a grid of phases
    Sweep(SweepArgs),
    /// Dataset behind one of the five standard figures (N = 100, uniform start)
    Figure(FigureArgs),
    /// Run the self-check suite and print a pass/fail table
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Search-space size N
    #[arg(long, default_value_t = 100)]
    n: u64,
    /// Marked-state phase: radians, pi, pi/K, pi*K or K*pi
    #[arg(long, default_value = "pi", value_parser = parse_theta, allow_hyphen_values = true)]
    theta: f64,
    /// Index of the marked state (full engine only)
    #[arg(long, default_value_t = 0)]
    marked: u64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write CSV here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum EngineArg {
    Reduced,
    #[default]
    Spectral,
    Full,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Reduced => Engine::Reduced,
            EngineArg::Spectral => Engine::Spectral,
            EngineArg::Full => Engine::Full,
        }
    }
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TrajectoryArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Last iteration index
    #[arg(long, default_value_t = 100)]
    jmax: usize,
    #[arg(long, value_enum, default_value_t)]
    engine: EngineArg,
    /// Initial amplitudes as RE_B,IM_B,RE_A,IM_A (default: uniform superposition)
    #[arg(long, allow_hyphen_values = true)]
    initial: Option<String>,
    /// Largest N the full engine will simulate
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Search-space size N
    #[arg(long, default_value_t = 100)]
    n: u64,
    /// Number of iterations behind the reported |B|
    #[arg(long, default_value_t = 4)]
    report: u64,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid: usize,
    /// Phase range as LO,HI
    #[arg(long, default_value = "0,2*pi", value_parser = parse_window)]
    window: (f64, f64),
    #[arg(long, value_enum, default_value_t)]
    engine: EngineArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Figure number, 1 to 5
    #[arg(long)]
    id: u32,
    /// Grid points for the phase sweeps of figures 1 and 2
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Also report how far the recurrence with 2*sqrt(N-2)/N drifts from
    /// the full simulation
    #[arg(long, hide = true)]
    literal_recurrence: bool,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Matrix {
        config: ProblemConfig,
    },
    Trajectory {
        config: ProblemConfig,
        initial: ReducedState,
        j_max: usize,
        engine: Engine,
        max_n: u64,
    },
    Sweep {
        n: u64,
        report: u64,
        grid: usize,
        window: (f64, f64),
        engine: Engine,
    },
    Figure {
        id: u32,
        figure: Figure,
        grid: usize,
    },
    Verify {
        literal_recurrence: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgsError {
    /// Help or version text; print it and exit successfully.
    Display(String),
    /// Bad invocation; the message names the offending flag.
    Usage(String),
}

impl ArgsError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ArgsError::Display(_) => 0,
            ArgsError::Usage(_) => 1,
        }
    }
}

fn usage(flag: &str, detail: impl std::fmt::Display) -> ArgsError {
    ArgsError::Usage(format!("error: invalid value for '{flag}': {detail}"))
}

fn problem(p: &ProblemArgs) -> Result<ProblemConfig, ArgsError> {
    ProblemConfig::new(p.n, p.theta)
        .map_err(|e| usage("--n", e))?
        .with_marked(p.marked)
        .map_err(|e| usage("--marked", e))
}

fn parse_initial(text: &str) -> Result<ReducedState, ArgsError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage("--initial", e))?;
    let [br, bi, ar, ai] = parts[..] else {
        return Err(usage("--initial", "expected RE_B,IM_B,RE_A,IM_A"));
    };
    custom_initial_state(Complex64::new(br, bi), Complex64::new(ar, ai))
        .map_err(|e| usage("--initial", e))
}

fn grid(points: usize) -> Result<usize, ArgsError> {
    if points < 3 {
        return Err(usage("--grid", "at least 3 points are required"));
    }
    Ok(points)
}

/// Parses and validates the arguments that follow the program name.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ArgsError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let full = std::iter::once(OsString::from(BIN)).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(full).map_err(|e| {
        use clap::error::ErrorKind::*;
        match e.kind() {
            DisplayHelp | DisplayVersion => ArgsError::Display(e.render().to_string()),
            _ => ArgsError::Usage(e.render().to_string()),
        }
    })?;

    Ok(match cli.command {
        Cmd::Matrix(a) => RunConfig {
            command: Command::Matrix {
                config: problem(&a.problem)?,
            },
            output: a.output.output,
        },
        Cmd::Trajectory(a) => {
            let config = problem(&a.problem)?;
            let initial = match &a.initial {
                Some(text) => parse_initial(text)?,
                None => uniform_initial_state(config.n()).map_err(|e| usage("--n", e))?,
            };
            RunConfig {
                command: Command::Trajectory {
                    config,
                    initial,
                    j_max: a.jmax,
                    engine: a.engine.into(),
                    max_n: a.max_n,
                },
                output: a.output.output,
            }
        }
        Cmd::Sweep(a) => {
            ProblemConfig::new(a.n, 0.0).map_err(|e| usage("--n", e))?;
            RunConfig {
                command: Command::Sweep {
                    n: a.n,
                    report: a.report,
                    grid: grid(a.grid)?,
                    window: a.window,
                    engine: a.engine.into(),
                },
                output: a.output.output,
            }
        }
        Cmd::Figure(a) => RunConfig {
            command: Command::Figure {
                id: a.id,
                figure: Figure::from_id(a.id).map_err(|e| usage("--id", e))?,
                grid: grid(a.grid)?,
            },
            output: a.output.output,
        },
        Cmd::Verify(a) => RunConfig {
            command: Command::Verify {
                literal_recurrence: a.literal_recurrence,
            },
            output: None,
        },
    })
}
