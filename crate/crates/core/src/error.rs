use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("substitution {0} is not primitive")]
    NotPrimitive(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("word {0} is not in the language")]
    NotInLanguage(String),
    #[error("element is not in the subgroup")]
    NotMember,
    #[error("generating set is not a basis of the free group")]
    NotABasis,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
