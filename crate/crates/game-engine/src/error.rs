use num::BigRational;
use thiserror::Error;

use crate::transcript::Mover;

/// A referee-law violation; the value names the broken law.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("radius law broken: expected {expected}, got {got}")]
    RadiusLaw { expected: BigRational, got: BigRational },

    #[error("ball not contained in the previous ball")]
    NotContained,

    #[error("initial radius {got} outside (0, 1/2]")]
    InitialRadius { got: BigRational },

    #[error("moves must alternate Black/White starting with Black")]
    Alternation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// A strategy emitted an invalid move; the game is forfeit.
    #[error("{mover:?} forfeits at round {round}: {violation}")]
    Forfeit { mover: Mover, round: usize, violation: Violation },

    #[error(transparent)]
    Arith(#[from] theta_arith::Error),

    #[error("orbit scan needs q up to {required} but the cap is {cap}")]
    ScanCapExceeded { required: String, cap: u64 },

    /// The dodge found no gap wide enough; unreachable when the lemma's
    /// radius window holds, so reaching it is a bug.
    #[error("no admissible gap at round {round}")]
    NoGap { round: usize },

    /// One of the strategy's asserted inequalities failed exactly. The proof
    /// rules this out; reaching it is a bug, never an input condition.
    #[error("internal contradiction at round {round}: {msg}")]
    Contradiction { round: usize, msg: String },

    /// Replay mismatch or configuration mismatch.
    #[error("replay diverged at round {round}: {msg}")]
    ReplayDivergence { round: usize, msg: String },

    #[error("{0}")]
    Other(String),
}

impl From<cont_frac::Error> for EngineError {
    fn from(e: cont_frac::Error) -> Self {
        match e {
            cont_frac::Error::Arith(a) => EngineError::Arith(a),
            cont_frac::Error::ScanCapExceeded { required, cap } => {
                EngineError::ScanCapExceeded { required: required.to_string(), cap }
            }
        }
    }
}
