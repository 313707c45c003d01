use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("search-space size must be at least 2, got {0}")]
    InvalidSize(u64),

    #[error("theta must be finite, got {0}")]
    NonFiniteTheta(f64),

    #[error("marked index {marked} is out of range for n = {n}")]
    MarkedOutOfRange { marked: u64, n: u64 },

    #[error("state is not normalized: norm^2 = {norm_sqr} (defect {defect:e})")]
    NotNormalized { norm_sqr: f64, defect: f64 },

    #[error("degenerate spectrum: eigenvalue separation {separation:e} is below {threshold:e}")]
    DegenerateSpectrum { separation: f64, threshold: f64 },

    #[error("unmarked amplitudes are not symmetric: relative deviation {deviation:e} exceeds {tolerance:e}")]
    SymmetryViolation { deviation: f64, tolerance: f64 },

    #[error("n = {n} exceeds the full-state size limit of {limit}")]
    SizeLimit { n: u64, limit: u64 },

    #[error("a theta grid needs at least 3 points, got {0}")]
    GridTooSmall(usize),

    #[error("invalid window ({lo}, {hi}): {reason}")]
    InvalidWindow {
        lo: f64,
        hi: f64,
        reason: &'static str,
    },

    #[error("at least one iteration is required")]
    NoIterations,

    #[error("unknown figure id {0}, expected 1 to 5")]
    UnknownFigure(u32),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSpectrum { .. }
                | Error::SymmetryViolation { .. }
                | Error::SizeLimit { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
