use thiserror::Error;

/// Errors surfaced by ring construction, enumeration, and verification.
#[derive(Debug, Error)]
pub enum Error {
    /// The ring spec text does not conform to the grammar.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// The ring spec parses but is semantically invalid (non-prime p,
    /// reducible polynomial, modulus below 2, ...).
    #[error("invalid ring spec: {0}")]
    Semantic(String),

    /// A configured cap (ring size, group size, search budget) was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// Elements or matrices from two different rings were mixed.
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    /// A precondition on operation arguments does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A property the underlying theory guarantees failed on concrete data.
    /// This is the loud-abort channel: it must never be swallowed.
    #[error("falsification: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
