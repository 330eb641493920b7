use thiserror::Error;

use crate::algebra::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("membership error: word {word} is not in the semigroup generated by {sigma}")]
    Membership { word: String, sigma: String },

    #[error("factorization error: pattern values at {first} and {second} disagree but share the image {image}")]
    Factorization {
        first: String,
        second: String,
        image: String,
    },

    #[error("budget exhausted after {trials} trials")]
    BudgetExhausted { trials: usize },

    #[error("orbit is not periodic")]
    NotPeriodic,

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("chain is not invariant: {0}")]
    NotInvariant(String),

    #[error("generator set is missing both signs of generator a{0}")]
    SigmaIncomplete(u32),

    #[error("delta {delta} outside the open interval (0, {bound})")]
    DeltaOutOfRange { delta: String, bound: String },

    #[error("matrix {index} is not invertible modulo {prime}")]
    NonInvertibleModP { index: usize, prime: u64 },

    #[error("no witness: the word's matrix is the identity modulo {0}; choose a larger prime")]
    NoWitness(u64),

    #[error("kernel word is empty")]
    EmptyWord,

    #[error("oracle is not normalized: block measures sum to {0}")]
    OracleNotNormalized(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn membership(word: &Word, sigma: &crate::algebra::GeneratorSet) -> Self {
        Error::Membership {
            word: word.to_string(),
            sigma: sigma.to_string(),
        }
    }
}
