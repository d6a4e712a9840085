use num::BigRational;
use theta_arith::{CircleInterval, ThetaSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mover {
    Black,
    White,
}

/// One validated move of the alternating game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub mover: Mover,
    pub ball: CircleInterval,
    pub round: usize,
    pub note: String,
}

/// Reproducibility metadata for the Black side, carried in transcripts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdversaryTag {
    pub kind: String,
    pub seed: Option<u64>,
    pub lookahead: Option<u32>,
    pub source: Option<String>,
}

/// How the White side was composed, for deterministic re-simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinatorDesc {
    /// A single dodging strategy on the configured theta.
    Plain,
    /// Dovetail of the strategy and its x -> -x conjugate (same theta).
    TwoSided,
    /// Dovetail of per-theta strategies.
    MultiTheta { thetas: Vec<ThetaSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub theta: ThetaSpec,
    pub max_rounds: usize,
    pub initial_black: CircleInterval,
    pub seed: Option<u64>,
    pub scan_cap: u64,
    pub adversary: Option<AdversaryTag>,
    pub combinator: CombinatorDesc,
}

/// The alternating move history of one game: B_1, W_1, B_2, W_2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub config: GameConfig,
    pub moves: Vec<Move>,
}

impl Transcript {
    pub fn new(config: GameConfig) -> Self {
        let first = Move {
            mover: Mover::Black,
            ball: config.initial_black.clone(),
            round: 1,
            note: String::new(),
        };
        Transcript { config, moves: vec![first] }
    }

    pub fn from_parts(config: GameConfig, moves: Vec<Move>) -> Self {
        Transcript { config, moves }
    }

    pub fn last_ball(&self) -> &CircleInterval {
        &self.moves.last().expect("transcript never empty").ball
    }

    pub fn whites_played(&self) -> usize {
        self.moves.iter().filter(|m| m.mover == Mover::White).count()
    }

    /// Round of the White move currently due (Black has already moved).
    pub fn current_round(&self) -> usize {
        self.whites_played() + 1
    }

    pub fn black_ball(&self, round: usize) -> Option<&CircleInterval> {
        self.moves
            .iter()
            .find(|m| m.mover == Mover::Black && m.round == round)
            .map(|m| &m.ball)
    }

    pub fn white_ball(&self, round: usize) -> Option<&CircleInterval> {
        self.moves
            .iter()
            .find(|m| m.mover == Mover::White && m.round == round)
            .map(|m| &m.ball)
    }

    pub fn final_white(&self) -> Option<&CircleInterval> {
        self.moves.iter().rev().find(|m| m.mover == Mover::White).map(|m| &m.ball)
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }
}
