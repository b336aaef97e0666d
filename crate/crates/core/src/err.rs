//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors produced by grid construction, evaluation and the solvers.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A caller-supplied parameter is outside its admissible range.
    InvalidParameter(String),
    /// An input measure violates a domain precondition (wrong side,
    /// negative mass where positivity is required, ...).
    Domain(String),
    /// Evaluation requested at a non-integrable singularity (an atom, a
    /// pole of a sheet function, ...).
    Singularity(String),
    /// Boundary value requested on a cut without an explicit side.
    NeedsSide(String),
    /// An iteration failed to reach its tolerance.
    NonConvergence { context: String, residual: f64 },
    /// The support of an iterate or solution is not of the admissible
    /// prefix/suffix form (usually a sign that the grid is too coarse).
    SupportForm(String),
    /// A structural property of the model failed to hold numerically
    /// (missing sign change, wrong critical point count, ...).
    ModelConsistency(String),
    /// A verification check failed beyond its tolerance.
    Verification(String),
    /// Evaluation requested too close to a quadrature boundary.
    Proximity(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::Singularity(s) => write!(f, "singularity: {s}"),
            Error::NeedsSide(s) => write!(f, "boundary side required: {s}"),
            Error::NonConvergence { context, residual } => {
                write!(f, "no convergence in {context} (residual {residual:.3e})")
            }
            Error::SupportForm(s) => write!(f, "unrecognized support form: {s}"),
            Error::ModelConsistency(s) => write!(f, "model inconsistency: {s}"),
            Error::Verification(s) => write!(f, "verification failure: {s}"),
            Error::Proximity(s) => write!(f, "evaluation too close to boundary: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
