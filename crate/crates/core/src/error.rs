use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "coupling too weak for the closed form: lambda = {lambda} < 10 * max(Gamma) = {limit}"
    )]
    CouplingTooWeak { lambda: f64, limit: f64 },

    #[error("drive amplitude inconsistent with equal shifted frequencies: F = {given}, required F = {required}")]
    DriveConstraint { given: f64, required: f64 },

    #[error("degenerate drive: Omega^2 - lambda^2 = {gap} is too close to zero")]
    DegenerateDrive { gap: f64 },

    #[error("lambda = 0 leaves Delta/lambda and Theta/lambda undefined")]
    DegenerateCoupling,

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("all damping rates are zero")]
    NoDissipation,

    #[error("truncation N = {given} too small for |beta| = {amplitude}; need N >= {minimum}")]
    Truncation {
        given: usize,
        minimum: usize,
        amplitude: f64,
    },

    #[error("step too large: lambda*dt = {lambda_dt} exceeds {limit}")]
    StepSize { lambda_dt: f64, limit: f64 },

    #[error("RK4 unstable: dt * |L|_inf = {value} exceeds {limit}")]
    Unstable { value: f64, limit: f64 },

    #[error("time grid must be non-empty, start at t >= 0 and increase strictly")]
    BadGrid,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("bad density-matrix dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
