use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid nonlinearity: {0}")]
    InvalidNonlinearity(String),

    #[error("the proportionality polynomial has no real root")]
    EmptySpectrumOfRoots,

    #[error("no admissible ratio: every real mu has H_u(1, mu) <= 0")]
    NoAdmissibleRatio,

    #[error("every mu satisfies the proportionality condition; supply mu explicitly")]
    ContinuumOfRatios,

    #[error("ratio mu = {mu} is not admissible (H_u(1, mu) = {hu} must be positive)")]
    NotAdmissible { mu: f64, hu: f64 },

    #[error("p = {p} > 4 and det(M) < 1/(p+1): a threshold speed omega_p is required")]
    MissingThreshold { p: u32 },

    #[error("unsupported Legendre eigenfunction request: {0}")]
    Unsupported(String),

    #[error("grid too coarse: least eigenvalue moved by {shift:e} under refinement (allowed {allowed:e})")]
    GridTooCoarse { shift: f64, allowed: f64 },

    #[error("invalid discretization: {0}")]
    InvalidGrid(String),

    #[error("quadrature did not converge (estimated error {estimate:e})")]
    QuadratureNotConverged { estimate: f64 },

    #[error("finite-difference step too large: truncation estimate {relative:e} relative")]
    StepTooLarge { relative: f64 },

    #[error("speed omega = {0} is outside the admissible range")]
    InvalidSpeed(f64),

    #[error("blow-up detected at t = {time}: max |U| = {max_abs:e}")]
    BlowupDetected { time: f64, max_abs: f64 },

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("problem schema error: {0}")]
    Schema(String),

    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Snake-case tag used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidNonlinearity(_) => "invalid_nonlinearity",
            Error::EmptySpectrumOfRoots => "empty_spectrum_of_roots",
            Error::NoAdmissibleRatio => "no_admissible_ratio",
            Error::ContinuumOfRatios => "continuum_of_ratios",
            Error::NotAdmissible { .. } => "not_admissible",
            Error::MissingThreshold { .. } => "missing_threshold",
            Error::Unsupported(_) => "unsupported",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::QuadratureNotConverged { .. } => "quadrature_not_converged",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::InvalidSpeed(_) => "invalid_speed",
            Error::BlowupDetected { .. } => "blowup_detected",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Schema(_) => "schema",
            Error::GoldenMismatch(_) => "golden_mismatch",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code: 2 schema (including a missing required `mu`), 3 no admissible ratio, 4 golden mismatch, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::InvalidNonlinearity(_) | Error::InvalidGrid(_) | Error::InvalidConfig(_) => 2,
            Error::ContinuumOfRatios => 2,
            Error::NoAdmissibleRatio | Error::EmptySpectrumOfRoots => 3,
            Error::GoldenMismatch(_) => 4,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
