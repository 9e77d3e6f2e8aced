use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// The minor of a quasideterminant is singular.
    #[error("quasideterminant undefined: {0}")]
    Undefined(String),

    #[error("roots are not independent: {0}")]
    DependentRoots(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("generator z{index} is outside NSym({n})")]
    GeneratorOutOfRange { index: u32, n: u32 },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    /// A derivation reached a contradiction, e.g. the relation span meeting the basis span.
    #[error("basis inconsistency: {0}")]
    Inconsistent(String),

    #[error("counit propagation stalled: {0}")]
    Underdetermined(String),

    #[error("coproduct slice not forced: {0}")]
    NotForced(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error at byte {offset}: {message} (expected one of: {})", expected.join(", "))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },
}

impl Error {
    /// Exit status for the command line: 2 for parse and usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            _ => 1,
        }
    }
}
