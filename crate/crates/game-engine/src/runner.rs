use crate::referee::{forfeit, validate_reply};
use crate::strategy::{BlackStrategy, RunReport, WhiteStrategy};
use crate::transcript::{GameConfig, Move, Mover, Transcript};
use crate::{Result, Violation};

#[derive(Debug)]
pub struct RunOutcome {
    pub transcript: Transcript,
    pub reports: Vec<RunReport>,
}

/// Alternate moves, validating each, until `max_rounds` White moves are made.
/// Black opens with `config.initial_black`; the final White interval is the
/// nested intersection's certified enclosure.
pub fn run_game(
    config: GameConfig,
    white: &mut dyn WhiteStrategy,
    black: &mut dyn BlackStrategy,
) -> Result<RunOutcome> {
    {
        let half = num::BigRational::new(1.into(), 2.into());
        let r = &config.initial_black.radius;
        if r <= &num::BigRational::from_integer(0.into()) || r > &half {
            return Err(forfeit(Mover::Black, 1, Violation::InitialRadius { got: r.clone() }));
        }
    }
    let theta = config.theta.clone();
    let max_rounds = config.max_rounds;
    let mut t = Transcript::new(config);

    for round in 1..=max_rounds {
        let reply = white.next_move(&t)?;
        if let Err(v) = validate_reply(t.last_ball(), &reply.ball, &t.config.alpha, &theta)? {
            return Err(forfeit(Mover::White, round, v));
        }
        t.push(Move { mover: Mover::White, ball: reply.ball, round, note: reply.note });

        if round == max_rounds {
            break;
        }
        let reply = black.next_move(&t)?;
        if let Err(v) = validate_reply(t.last_ball(), &reply.ball, &t.config.beta, &theta)? {
            return Err(forfeit(Mover::Black, round + 1, v));
        }
        t.push(Move { mover: Mover::Black, ball: reply.ball, round: round + 1, note: reply.note });
    }

    let final_white = t.final_white().expect("at least one White move").clone();
    let reports = white.reports(&final_white);
    Ok(RunOutcome { transcript: t, reports })
}
