use num::{BigRational, One, Zero};
use theta_arith::{interval_contains, CircleInterval, ThetaSpec};

use crate::error::{EngineError, Violation};
use crate::transcript::{Mover, Transcript};
use crate::Result;

/// Referee check for one reply. The radius laws are equalities: White must
/// play exactly `alpha * rho(B)`, Black exactly `beta * rho(W)`.
pub fn validate_reply(
    prev: &CircleInterval,
    next: &CircleInterval,
    ratio: &BigRational,
    theta: &ThetaSpec,
) -> Result<std::result::Result<(), Violation>> {
    let expected = ratio * &prev.radius;
    if next.radius != expected {
        return Ok(Err(Violation::RadiusLaw { expected, got: next.radius.clone() }));
    }
    if !interval_contains(prev, next, theta)? {
        return Ok(Err(Violation::NotContained));
    }
    Ok(Ok(()))
}

fn initial_ok(ball: &CircleInterval) -> std::result::Result<(), Violation> {
    let half = BigRational::new(1.into(), 2.into());
    if ball.radius <= BigRational::zero() || ball.radius > half {
        return Err(Violation::InitialRadius { got: ball.radius.clone() });
    }
    Ok(())
}

/// Re-validate a stored transcript move by move: alternation, the initial
/// radius bound, containment, and the exact radius laws.
pub fn validate_transcript(t: &Transcript) -> Result<std::result::Result<(), (usize, Mover, Violation)>> {
    let theta = &t.config.theta;
    if t.moves.is_empty() {
        return Ok(Err((1, Mover::Black, Violation::Alternation)));
    }
    for (i, mv) in t.moves.iter().enumerate() {
        let want_black = i % 2 == 0;
        let round = i / 2 + 1;
        let ok = match (want_black, mv.mover) {
            (true, Mover::Black) | (false, Mover::White) => mv.round == round,
            _ => false,
        };
        if !ok {
            return Ok(Err((round, mv.mover, Violation::Alternation)));
        }
    }
    if let Err(v) = initial_ok(&t.moves[0].ball) {
        return Ok(Err((1, Mover::Black, v)));
    }
    let one = BigRational::one();
    for w in t.moves.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        let ratio = match next.mover {
            Mover::White => &t.config.alpha,
            Mover::Black => &t.config.beta,
        };
        let _ = one;
        if let Err(v) = validate_reply(&prev.ball, &next.ball, ratio, theta)? {
            return Ok(Err((next.round, next.mover, v)));
        }
    }
    Ok(Ok(()))
}

/// Forfeit helper used by the runner.
pub fn forfeit(mover: Mover, round: usize, violation: Violation) -> EngineError {
    EngineError::Forfeit { mover, round, violation }
}
