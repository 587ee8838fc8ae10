use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is too small, need at least 2")]
    InvalidModulus(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("no unit in [2, {0}) to sample from")]
    NoInvertibleElement(u64),
    #[error("empty sampling range [{lo}, {hi}]")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid secret value: {0}")]
    InvalidSecret(String),
    #[error("blinding value r = {r} outside [1, {r_max}]")]
    BlindingOutOfRange { r: u64, r_max: u64 },
    #[error("message is empty")]
    EmptyMessage,
    #[error("symbol {value} at position {index} exceeds the byte bound {m_max}")]
    SymbolOutOfRange { index: usize, value: u64, m_max: u64 },
    #[error("character {ch:?} at position {index} cannot be encoded (bound {m_max})")]
    UnencodableCharacter { index: usize, ch: char, m_max: u64 },
    #[error("value {value} at position {index} is not a valid character")]
    UndecodableSymbol { index: usize, value: u64 },
    #[error("ciphertext block {value} at position {index} is not below q = {q}")]
    BlockOutOfRange { index: usize, value: u64, q: u64 },
    #[error("ciphertext modulus {ciphertext} does not match key modulus {key}")]
    ModulusMismatch { key: u64, ciphertext: u64 },

    #[error("ciphertext has no blocks")]
    EmptyCiphertext,
    #[error("no offset decodes every block into [0, {m_max}]")]
    NoFeasibleOffset { m_max: u64 },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("text contains no symbols from the alphabet")]
    NoAlphabetSymbols,

    /// `line` is 1-based; 0 means the file as a whole.
    #[error("{}", describe_malformed(*.line, .reason))]
    Malformed { line: usize, reason: String },
}

fn describe_malformed(line: usize, reason: &str) -> String {
    match line {
        0 => reason.to_string(),
        n => format!("line {n}: {reason}"),
    }
}

impl Error {
    pub(crate) fn malformed(line: usize, reason: impl Into<String>) -> Self {
        Error::Malformed {
            line,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
