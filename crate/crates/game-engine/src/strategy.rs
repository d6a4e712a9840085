use num::{BigInt, BigRational};
use theta_arith::{CircleInterval, ThetaSpec};

use crate::transcript::Transcript;
use crate::Result;

/// A strategy's reply: the ball to play plus the annotation recorded in the
/// transcript (phase labels, dodged generations, index snapshots).
#[derive(Debug, Clone)]
pub struct Reply {
    pub ball: CircleInterval,
    pub note: String,
}

impl Reply {
    pub fn plain(ball: CircleInterval) -> Self {
        Reply { ball, note: String::new() }
    }
}

/// What a finished White strategy claims about the final interval: every
/// orbit point `theta*q` with `q_lo <= q < q_hi` stays at circle distance at
/// least `(alpha*beta_effective/4)^3 / q` from every point of the window.
/// The verifier crate turns these into checkable certificates.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub label: String,
    pub theta: ThetaSpec,
    pub alpha: BigRational,
    pub beta_effective: BigRational,
    pub q_lo: BigInt,
    pub q_hi: BigInt,
    pub window: CircleInterval,
}

pub trait WhiteStrategy {
    /// The transcript ends with an unanswered Black ball; produce W for it.
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply>;

    /// Claims about the final White interval once the game is over.
    fn reports(&self, final_white: &CircleInterval) -> Vec<RunReport> {
        let _ = final_white;
        Vec::new()
    }
}

pub trait BlackStrategy {
    /// The transcript ends with a White ball; produce the next Black ball.
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply>;
}

/// The trivial White strategy: always shrink about the current center.
#[derive(Debug, Default)]
pub struct CenteredWhite;

impl WhiteStrategy for CenteredWhite {
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply> {
        let b = transcript.last_ball();
        let radius = &transcript.config.alpha * &b.radius;
        let ball = CircleInterval::new(b.center.clone(), radius)?;
        Ok(Reply { ball, note: "centered".into() })
    }
}
