use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("malformed exponent `{0}`")]
    MalformedExponent(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// Coset enumeration ran out of room. The group may be infinite or just
    /// larger than the budget allows.
    #[error("coset budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("coset table does not satisfy relator {relator} at coset {coset}")]
    InconsistentTable { relator: usize, coset: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("inconsistent coefficient action: {0}")]
    InconsistentAction(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("elementary symbol needs distinct indices, got ({0}, {0})")]
    DiagonalSymbol(usize),

    #[error("invalid Seifert invariants: {0}")]
    InvalidSeifert(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    /// Neither enumeration nor the central-fibre argument settles the case.
    #[error("undecided: {0}")]
    Undecided(String),
}
