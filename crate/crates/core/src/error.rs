use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructions and checkers.
///
/// Law violations are not errors: they are reported as failed checks in a
/// [`crate::LawReport`] together with a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monad is not finiteness-preserving: {0}")]
    NonFinitePreserving(String),

    #[error("blow-up guard: {what} would have {size} elements (limit {limit})")]
    BlowUpGuard { what: String, size: String, limit: u128 },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("missing component: {0}")]
    MissingComponent(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("requested depth {requested} exceeds available depth {available}")]
    DepthExceeded { requested: usize, available: usize },

    #[error("zero-object condition violated: |M0| = {0}, expected 1")]
    ZeroObjectViolation(usize),

    #[error("sequence is not Cauchy: terms {i} and {j} disagree at level {level}")]
    NotCauchy { level: usize, i: usize, j: usize },

    #[error("bound mismatch: {0}")]
    BoundMismatch(String),

    #[error("monad has no biproducts on its algebras: {0}")]
    NotBiproductCompatible(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors that stem from the input rather than a law violation or
    /// resource limit. The CLI maps every error to exit code 2 regardless.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Invalid(_) | Error::Parse { .. } | Error::DomainMismatch(_) | Error::NotAGroup(_)
        )
    }
}
