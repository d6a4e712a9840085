use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A finite-depth quotient stream ran out before a comparison resolved.
    /// `needed` is the 1-based quotient index that was requested; retrying
    /// with a stream at least that deep will make the operation succeed.
    #[error("quotient stream exhausted: quotient a_{needed} is beyond the stored depth {depth}")]
    StreamExhausted { needed: usize, depth: usize },

    /// Malformed theta description (zero quotient, empty stream, ...).
    #[error("invalid theta description: {0}")]
    InvalidTheta(String),

    /// Parse failure for the textual `cf:[...]` / `cfper:[...|...]` formats.
    #[error("cannot parse theta spec at byte {pos}: {msg}")]
    ParseTheta { pos: usize, msg: String },
}
