use core::fmt;

/// Errors raised by the in-memory codec stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    /// A digit outside the alphabet expected by the stage.
    InvalidDigit { digit: u8, position: usize },
    /// A `1xn1` run token that cannot be parsed in strict mode.
    MalformedToken { position: usize },
    /// An argument outside the operation's domain (zero dividend, residue
    /// not below the default number, and the like).
    Domain(&'static str),
    /// Mismatched lengths between paired inputs.
    LengthMismatch { left: usize, right: usize },
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::InvalidDigit { digit, position } => {
                write!(f, "invalid digit {digit} at position {position}")
            }
            CodecError::MalformedToken { position } => {
                write!(f, "malformed run token at position {position}")
            }
            CodecError::Domain(msg) => write!(f, "domain error: {msg}"),
            CodecError::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for CodecError {}
