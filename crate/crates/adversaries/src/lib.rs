//! Black strategies that stress the White side: a seeded random player, a
//! greedy player that shepherds the game toward low-generation orbit points,
//! a bit-exact transcript replayer and a scripted list. The paper's Black is
//! universally quantified; these instantiate the quantifier. Random and
//! greedy emit referee-legal moves by construction.

use std::cmp::Ordering;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cont_frac::orbit_scan;
use game_engine::notes::{split_slot, MoveNote};
use game_engine::{BlackStrategy, EngineError, Mover, Reply, Transcript};
use theta_arith::{offset_from, CircleInterval, LinearForm, ThetaSpec};

type Result<T> = std::result::Result<T, EngineError>;

/// Uniformly positioned legal ball: the center offset is a rational with
/// bounded denominator (2^16 scaled to the available slack), clamped to
/// containment; the radius is exactly `beta * rho(W)`.
pub struct RandomBlack {
    rng: ChaCha8Rng,
}

impl RandomBlack {
    pub fn new(seed: u64) -> Self {
        RandomBlack { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

const DENOM_BOUND: i64 = 1 << 16;

impl BlackStrategy for RandomBlack {
    fn next_move(&mut self, t: &Transcript) -> Result<Reply> {
        let w = t.last_ball();
        let radius = &t.config.beta * &w.radius;
        let slack = &w.radius - &radius;
        let k: i64 = self.rng.gen_range(-DENOM_BOUND..=DENOM_BOUND);
        let offset = BigRational::new(k.into(), DENOM_BOUND.into()) * slack;
        let center = w
            .center
            .translate(&LinearForm::from_rational(offset), &t.config.theta)
            .map_err(EngineError::Arith)?;
        let ball = CircleInterval::new(center, radius).map_err(EngineError::Arith)?;
        Ok(Reply { ball, note: String::new() })
    }
}

/// Greedy attack on the dodging strategy: among legal centers, pick the one
/// minimizing the exact distance to the nearest orbit point of generation at
/// most (current dodged horizon + lookahead); ties prefer smaller q. With no
/// orbit point in reach it falls back to a centered shrink.
pub struct GreedyOrbitBlack {
    lookahead: u32,
}

impl GreedyOrbitBlack {
    pub fn new(lookahead: u32) -> Self {
        assert!(lookahead >= 1);
        GreedyOrbitBlack { lookahead }
    }

    fn horizon(&self, t: &Transcript) -> usize {
        let mut dodged = 0usize;
        for mv in &t.moves {
            if mv.mover == Mover::White {
                let (_, body) = split_slot(&mv.note);
                if let MoveNote::Dodge { gen_hi, .. } = MoveNote::parse(body) {
                    dodged = dodged.max(gen_hi);
                }
            }
        }
        dodged + self.lookahead as usize
    }
}

impl BlackStrategy for GreedyOrbitBlack {
    fn next_move(&mut self, t: &Transcript) -> Result<Reply> {
        let theta = &t.config.theta;
        let w = t.last_ball();
        let radius = &t.config.beta * &w.radius;
        let max_offset = &w.radius - &radius;

        // Clamp the enumeration horizon to the scan cap.
        let mut gen = self.horizon(t);
        let q_end = loop {
            match theta.convergent_pair(gen + 1) {
                Ok((_, q)) if q <= BigInt::from(t.config.scan_cap) => break q,
                Ok(_) | Err(_) if gen > 0 => gen -= 1,
                Ok((_, q)) => break q.min(BigInt::from(t.config.scan_cap)),
                Err(e) => return Err(EngineError::Arith(e)),
            }
        };
        let q_end = u64::try_from(&q_end).unwrap_or(t.config.scan_cap);

        let candidates = orbit_scan(theta, w, 1, q_end, t.config.scan_cap)?;
        // Choose the point whose clamped center gets closest; ties by q.
        let mut best: Option<(LinearForm, u64)> = None; // (achievable dist, q)
        let mut best_offset: Option<LinearForm> = None;
        for c in candidates {
            let u = offset_from(&c.point, &w.center, theta).map_err(EngineError::Arith)?;
            let au = match u.sign(theta).map_err(EngineError::Arith)? {
                Ordering::Less => -u.clone(),
                _ => u.clone(),
            };
            // Achievable distance after clamping |offset| <= max_offset.
            let over = au.sub_rational(&max_offset);
            let achievable = match over.sign(theta).map_err(EngineError::Arith)? {
                Ordering::Greater => over,
                _ => LinearForm::zero(),
            };
            let better = match &best {
                None => true,
                Some((cur, cur_q)) => {
                    match achievable.cmp_form(cur, theta).map_err(EngineError::Arith)? {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => c.q < *cur_q,
                    }
                }
            };
            if better {
                // Clamp the offset toward the point.
                let clamped = clamp_form(&u, &max_offset, theta)?;
                best = Some((achievable, c.q));
                best_offset = Some(clamped);
            }
        }

        let (offset, note) = match (best, best_offset) {
            (Some((_, q)), Some(off)) => (off, format!("greedy(q={q})")),
            _ => (LinearForm::zero(), "greedy(fallback)".into()),
        };
        let center = w.center.translate(&offset, theta).map_err(EngineError::Arith)?;
        let ball = CircleInterval::new(center, radius).map_err(EngineError::Arith)?;
        Ok(Reply { ball, note })
    }
}

/// Clamp a signed offset form into `[-bound, bound]` (rational bound).
fn clamp_form(u: &LinearForm, bound: &BigRational, theta: &ThetaSpec) -> Result<LinearForm> {
    let over_hi = u.sub_rational(bound);
    if over_hi.sign(theta).map_err(EngineError::Arith)? == Ordering::Greater {
        return Ok(LinearForm::from_rational(bound.clone()));
    }
    let under_lo = u.add_rational(bound);
    if under_lo.sign(theta).map_err(EngineError::Arith)? == Ordering::Less {
        return Ok(LinearForm::from_rational(-bound.clone()));
    }
    Ok(u.clone())
}

/// Re-emit the Black moves of a recorded transcript, failing loudly if the
/// live game diverges from the recording.
pub struct ReplayBlack {
    source: Transcript,
}

impl ReplayBlack {
    /// The recorded config must match the live game's (alpha, beta, theta).
    pub fn new(source: Transcript, live: &game_engine::GameConfig) -> Result<Self> {
        if source.config.alpha != live.alpha
            || source.config.beta != live.beta
            || source.config.theta != live.theta
        {
            return Err(EngineError::ReplayDivergence {
                round: 0,
                msg: "config mismatch (alpha, beta, theta)".into(),
            });
        }
        Ok(ReplayBlack { source })
    }

    pub fn from_transcript_unchecked(source: Transcript) -> Self {
        ReplayBlack { source }
    }
}

impl BlackStrategy for ReplayBlack {
    fn next_move(&mut self, t: &Transcript) -> Result<Reply> {
        // The live prefix must match the recording move for move.
        for (i, live) in t.moves.iter().enumerate() {
            let Some(rec) = self.source.moves.get(i) else {
                return Err(EngineError::ReplayDivergence {
                    round: live.round,
                    msg: "recording ended before the live game".into(),
                });
            };
            if rec.mover != live.mover || rec.ball != live.ball {
                return Err(EngineError::ReplayDivergence {
                    round: live.round,
                    msg: format!("move {} differs from the recording", i + 1),
                });
            }
        }
        let next = self.source.moves.get(t.moves.len()).ok_or_else(|| {
            EngineError::ReplayDivergence {
                round: t.current_round(),
                msg: "recording has no further Black move".into(),
            }
        })?;
        if next.mover != Mover::Black {
            return Err(EngineError::ReplayDivergence {
                round: next.round,
                msg: "recording out of phase".into(),
            });
        }
        Ok(Reply { ball: next.ball.clone(), note: next.note.clone() })
    }
}

/// Plays an explicit ball list (legality is the caller's business; the
/// referee will forfeit illegal scripts, which is what tests use it for).
pub struct ScriptedBlack {
    moves: Vec<CircleInterval>,
    at: usize,
}

impl ScriptedBlack {
    pub fn new(moves: Vec<CircleInterval>) -> Self {
        ScriptedBlack { moves, at: 0 }
    }
}

impl BlackStrategy for ScriptedBlack {
    fn next_move(&mut self, t: &Transcript) -> Result<Reply> {
        match self.moves.get(self.at) {
            Some(b) => {
                self.at += 1;
                Ok(Reply { ball: b.clone(), note: "scripted".into() })
            }
            None => {
                // Script exhausted: legal centered shrink keeps the game going.
                let w = t.last_ball();
                let radius = &t.config.beta * &w.radius;
                let ball = CircleInterval::new(w.center.clone(), radius)
                    .map_err(EngineError::Arith)?;
                Ok(Reply { ball, note: "scripted(end)".into() })
            }
        }
    }
}
