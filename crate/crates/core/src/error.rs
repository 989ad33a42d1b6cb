use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is not valid for monoid {monoid}")]
    Mismatch { monoid: String, element: String },

    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64 },

    #[error("malformed descriptor: {0}")]
    Malformed(String),

    #[error("sequence does not sum to zero: {0}")]
    NotZeroSum(String),

    #[error("group element out of range: {0}")]
    OutOfRange(String),

    #[error("cannot certify: {0}")]
    Uncertifiable(String),

    #[error("integer overflow in {0}")]
    Overflow(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
