use thiserror::Error;

/// Errors produced by the distribution, reliability and inference routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution parameter lies outside its admissible domain.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A function argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method did not converge.
    #[error("{method} did not converge: {detail}")]
    Convergence { method: &'static str, detail: String },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature failed on [{lower}, {upper}]: estimate {estimate}, error {error}, after {intervals} subintervals")]
    Quadrature {
        lower: f64,
        upper: f64,
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    /// The survival or distribution function is too small to condition on.
    #[error("tail underflow at t = {t}: conditioning probability is zero")]
    TailUnderflow { t: f64 },

    /// Lifetime data could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A lifetime observation is not strictly positive.
    #[error("line {line}: observation {value} is not a positive lifetime")]
    NonPositive { line: usize, value: f64 },

    /// Dataset has too few observations.
    #[error("dataset needs at least {required} observations, found {found}")]
    TooFewObservations { required: usize, found: usize },

    /// A numerical linear-algebra or differentiation step produced a non-finite value.
    #[error("non-finite value in {context} at coordinate {coordinate}")]
    NonFinite {
        context: &'static str,
        coordinate: usize,
    },

    /// Models passed to a comparison are not nested.
    #[error("models are not nested: {0}")]
    NotNested(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
