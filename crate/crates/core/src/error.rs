//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by samplers, estimators, and surrogates.
#[derive(Debug, Error)]
pub enum Error {
    /// A user-supplied input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The process model produced a NaN or infinite constraint value.
    ///
    /// Non-finite outputs are never coerced to "infeasible"; they abort the
    /// run so that model bugs surface instead of silently shrinking the
    /// design space.
    #[error("model returned non-finite constraint value g[{index}] = {value} at d = {d:?}, theta = {theta:?}")]
    NonFiniteConstraint {
        index: usize,
        value: f64,
        d: Vec<f64>,
        theta: Vec<f64>,
    },

    /// The process model itself failed (subprocess exit, timeout, bad output).
    #[error("model evaluation failed at d = {d:?}, theta = {theta:?}: {message}")]
    ModelFailure {
        message: String,
        d: Vec<f64>,
        theta: Vec<f64>,
    },

    /// A vector had the wrong length for the operation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Enclosing-ellipsoid construction needs at least two points.
    #[error("ellipsoid construction needs at least 2 points, got {got}")]
    TooFewPoints { got: usize },

    /// Rejection sampling against the knowledge space gave up.
    #[error("ellipsoid nearly disjoint from knowledge space: {attempts} consecutive proposals rejected")]
    EllipsoidDisjoint { attempts: usize },

    /// Surrogate training produced a non-finite loss.
    #[error("training diverged; reduce learning rate (loss became non-finite at epoch {epoch})")]
    TrainingDiverged { epoch: usize },

    /// Surrogate training needs a minimum number of labelled samples.
    #[error("dataset too small: got {got} samples, need at least {min}")]
    UndersizedDataset { got: usize, min: usize },

    /// A persisted model document carried an unknown schema tag.
    #[error("unsupported model schema {found:?}, expected {expected:?}")]
    SchemaVersion { found: String, expected: String },

    /// erf_inv is only defined on the open interval (-1, 1).
    #[error("erf_inv argument {0} outside the open interval (-1, 1)")]
    ErfInvDomain(f64),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach the (d, theta) evaluation context to a constraint error that
    /// was detected without it.
    pub(crate) fn with_eval_context(self, d: &[f64], theta: &[f64]) -> Self {
        match self {
            Error::NonFiniteConstraint { index, value, .. } => Error::NonFiniteConstraint {
                index,
                value,
                d: d.to_vec(),
                theta: theta.to_vec(),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
