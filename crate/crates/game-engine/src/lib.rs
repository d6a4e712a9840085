//! Referee and runner for Schmidt (alpha,beta)-games on the circle R/Z, plus
//! the two strategy combinators (round-robin dovetailing and conjugation by a
//! circle isometry) that realize the winning-set closure properties.

mod combinators;
mod error;
pub mod json;
pub mod notes;
mod referee;
mod runner;
mod strategy;
mod transcript;

pub use combinators::{Conjugate, Dovetail, IsometryMap};
pub use error::{EngineError, Violation};
pub use referee::{validate_reply, validate_transcript};
pub use runner::{run_game, RunOutcome};
pub use strategy::{BlackStrategy, CenteredWhite, Reply, RunReport, WhiteStrategy};
pub use transcript::{AdversaryTag, CombinatorDesc, GameConfig, Move, Mover, Transcript};

pub type Result<T> = std::result::Result<T, EngineError>;
