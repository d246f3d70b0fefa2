use std::path::PathBuf;

/// Errors raised by the computational kernels and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degree {0} is not supported: the d=5 zeta function has not been computed in the literature; see the conjecture checker")]
    UnsupportedDegree(u32),

    #[error("series constant term is not invertible: {0}")]
    NonInvertibleConstant(String),

    #[error("series of order {have} is too short; expand further (need order >= {need})")]
    InsufficientOrder { have: usize, need: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded for {what}: {needed} > {budget}; {hint}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
        hint: &'static str,
    },

    #[error("element is not a unit in the coefficient ring")]
    NotAUnit,

    #[error("group element violates det(g3) = det(g2)")]
    DeterminantConstraint,

    #[error("index {index} out of range for tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("rewrite system completed only to degree {completed}, element has degree {degree}")]
    IncompleteRewriteSystem { completed: usize, degree: usize },

    #[error("rewrite completion produced more than {cap} rules")]
    RuleExplosion { cap: usize },

    #[error("exact mismatch at b={b}: computed {computed}, predicted {predicted}")]
    ExactMismatch {
        b: u32,
        computed: String,
        predicted: String,
    },

    #[error("modular ranks disagree: rank {} mod {}, rank {} mod {}", .first.1, .first.0, .second.1, .second.0)]
    PrimeDisagreement { first: (u64, usize), second: (u64, usize) },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
