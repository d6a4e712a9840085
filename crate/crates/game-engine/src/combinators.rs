use num::{BigRational, One, Signed};
use theta_arith::{reduce_mod_one, CircleInterval, CirclePoint, LinearForm, ThetaSpec};

use crate::strategy::{Reply, RunReport, WhiteStrategy};
use crate::transcript::{Move, Mover, Transcript};
use crate::{EngineError, Result};

/// An isometry of the circle `x -> ±x + c`. Only isometries preserve the
/// exact radius laws, so non-unit scales are rejected at construction.
#[derive(Debug, Clone)]
pub struct IsometryMap {
    negate: bool,
    offset: LinearForm,
}

impl IsometryMap {
    pub fn new(scale: BigRational, offset: LinearForm) -> Result<Self> {
        if scale.abs() != BigRational::one() {
            return Err(EngineError::Other(format!(
                "conjugation requires |scale| = 1, got {scale}"
            )));
        }
        Ok(IsometryMap { negate: scale < BigRational::from_integer(0.into()), offset })
    }

    pub fn identity() -> Self {
        IsometryMap { negate: false, offset: LinearForm::zero() }
    }

    /// The reflection `x -> -x`.
    pub fn negation() -> Self {
        IsometryMap { negate: true, offset: LinearForm::zero() }
    }

    pub fn inverse(&self) -> Self {
        if self.negate {
            // (-x + c) is an involution
            self.clone()
        } else {
            IsometryMap { negate: false, offset: -self.offset.clone() }
        }
    }

    pub fn apply_point(&self, p: &CirclePoint, theta: &ThetaSpec) -> Result<CirclePoint> {
        let f = if self.negate { -p.form().clone() } else { p.form().clone() };
        Ok(reduce_mod_one(&(f + self.offset.clone()), theta)?)
    }

    pub fn apply_interval(&self, iv: &CircleInterval, theta: &ThetaSpec) -> Result<CircleInterval> {
        let center = self.apply_point(&iv.center, theta)?;
        Ok(CircleInterval::new(center, iv.radius.clone())?)
    }
}

/// Conjugation `map . white . map^-1`: pull the game back through the map,
/// ask the inner strategy, push its answer forward.
pub struct Conjugate {
    inner: Box<dyn WhiteStrategy>,
    map: IsometryMap,
}

impl Conjugate {
    pub fn new(inner: Box<dyn WhiteStrategy>, map: IsometryMap) -> Self {
        Conjugate { inner, map }
    }
}

impl WhiteStrategy for Conjugate {
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply> {
        let theta = &transcript.config.theta;
        let inv = self.map.inverse();
        let mut pulled = Transcript::from_parts(transcript.config.clone(), Vec::new());
        for mv in &transcript.moves {
            let ball = inv.apply_interval(&mv.ball, theta)?;
            pulled.push(Move { ball, ..mv.clone() });
        }
        pulled.config.initial_black = inv.apply_interval(&transcript.config.initial_black, theta)?;
        let reply = self.inner.next_move(&pulled)?;
        let ball = self.map.apply_interval(&reply.ball, theta)?;
        Ok(Reply { ball, note: reply.note })
    }

    fn reports(&self, final_white: &CircleInterval) -> Vec<RunReport> {
        // The inner strategy certified the pulled-back game, so its claims
        // are about the reflected final interval.
        let mut out = Vec::new();
        for r in self.inner.reports(final_white) {
            let theta = r.theta.clone();
            match self.map.inverse().apply_interval(final_white, &theta) {
                Ok(window) => out.push(RunReport { window, ..r }),
                Err(_) => continue,
            }
        }
        out
    }
}

/// Round-robin dovetailing: route round `t` to strategy `(t-1) mod n`,
/// presenting it the subsampled transcript in which the skipped rounds are
/// absorbed into an effective `beta' = beta * (alpha*beta)^(n-1)`.
///
/// Each inner strategy must win at its `alpha` for *every* Black ratio; the
/// subsampled game it sees is a legal game at `(alpha, beta')`. The schedule
/// is fixed round-robin.
pub struct Dovetail {
    slots: Vec<Box<dyn WhiteStrategy>>,
}

impl Dovetail {
    pub fn new(slots: Vec<Box<dyn WhiteStrategy>>) -> Self {
        assert!(!slots.is_empty());
        Dovetail { slots }
    }

    /// The effective Black ratio seen by each slot of an n-way dovetail.
    pub fn effective_beta(alpha: &BigRational, beta: &BigRational, n: usize) -> BigRational {
        let ab = alpha * beta;
        let mut out = beta.clone();
        for _ in 1..n {
            out *= &ab;
        }
        out
    }

    fn subsample(&self, t: &Transcript, slot: usize) -> Transcript {
        let n = self.slots.len();
        let mut config = t.config.clone();
        config.beta = Self::effective_beta(&t.config.alpha, &t.config.beta, n);
        let mut moves = Vec::new();
        let mut inner_round = 0usize;
        for mv in &t.moves {
            if (mv.round + n - 1 - slot) % n != 0 {
                continue;
            }
            if mv.mover == Mover::Black {
                inner_round += 1;
            }
            moves.push(Move { round: inner_round, ..mv.clone() });
        }
        if let Some(first) = moves.first() {
            config.initial_black = first.ball.clone();
        }
        config.max_rounds = t.config.max_rounds / n + 1;
        Transcript::from_parts(config, moves)
    }
}

impl WhiteStrategy for Dovetail {
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply> {
        let n = self.slots.len();
        let round = transcript.current_round();
        let slot = (round - 1) % n;
        let sub = self.subsample(transcript, slot);
        let reply = self.slots[slot].next_move(&sub)?;
        Ok(Reply { ball: reply.ball, note: format!("s{slot}|{}", reply.note) })
    }

    fn reports(&self, final_white: &CircleInterval) -> Vec<RunReport> {
        let mut out = Vec::new();
        for (k, s) in self.slots.iter().enumerate() {
            for r in s.reports(final_white) {
                out.push(RunReport { label: format!("s{k}:{}", r.label), ..r });
            }
        }
        out
    }
}
