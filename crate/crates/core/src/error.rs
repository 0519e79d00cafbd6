use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not unimodular: ad - bc = {det}")]
    NotUnimodular { det: f64 },

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("grid incompatible: {0}")]
    GridIncompatible(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("window shift {mu} on axis {axis} does not land on the signal grid")]
    MuOffGrid { axis: usize, mu: f64 },

    #[error("window has zero L2 norm")]
    ZeroWindow,

    #[error("grid is not symmetric under negation on axis {0}")]
    AsymmetricGrid(usize),

    #[error("shift {shift} on axis {axis} is not a whole number of grid steps or leaves the grid")]
    OffGridShift { axis: usize, shift: f64 },

    #[error("input must be real-valued: {0}")]
    RealInputRequired(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{0} out of range: {1}")]
    OutOfRange(&'static str, f64),

    #[error("special function domain error: {0}")]
    Domain(String),

    #[error("K0' mismatch: analytic {analytic}, finite difference {finite_difference}")]
    K0Mismatch {
        analytic: f64,
        finite_difference: f64,
    },

    #[error("signal has zero norm")]
    ZeroSignal,

    #[error("concentration too weak: eps_sigma = {eps_sigma}, eps_tau = {eps_tau}")]
    DegenerateConcentration { eps_sigma: f64, eps_tau: f64 },

    #[error("bad signal spec: {0}")]
    BadSpec(String),

    #[error("bad config: {0}")]
    BadConfig(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unsupported file version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("truncated payload: expected {expected} bytes, found {actual}")]
    TruncatedPayload { expected: u64, actual: u64 },

    #[error("{extra} unexpected bytes after payload")]
    TrailingBytes { extra: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the filesystem or file contents.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::MalformedHeader(_)
                | Error::VersionMismatch { .. }
                | Error::TruncatedPayload { .. }
                | Error::TrailingBytes { .. }
                | Error::Json(_)
        )
    }
}
