use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size must be positive, got {0}")]
    InvalidAlphabet(u32),
    #[error("alphabet of size 1 is degenerate; experiments need sigma >= 2")]
    DegenerateAlphabet,
    #[error("symbol {symbol} at position {position} is outside the alphabet 1..={sigma}")]
    SymbolOutOfAlphabet {
        position: usize,
        symbol: u32,
        sigma: u32,
    },
    #[error("character {character:?} at position {position} is not a lowercase letter")]
    InvalidCharacter { position: usize, character: char },
    #[error("substring [{i},{j}] out of range for length {len}")]
    OutOfRange { i: usize, j: usize, len: usize },
    #[error("operation undefined for the empty string")]
    EmptyString,
    #[error("string too short: need length >= {min}, got {len}")]
    TooShort { min: usize, len: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration needs {required} strings, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
