//! Transcript JSON: all integers are decimal strings (arbitrary precision),
//! rationals are canonical reduced `"p/q"`. Replay requires a bit-exact
//! round-trip, so serialization is deterministic: fixed field order, no maps.

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use theta_arith::{CircleInterval, CirclePoint, LinearForm, ThetaSpec};

use crate::transcript::{AdversaryTag, CombinatorDesc, GameConfig, Move, Mover, Transcript};
use crate::{EngineError, Result};

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_from_string(s: &str) -> Result<BigRational> {
    let bad = || EngineError::Other(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CenterDoc {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct MoveDoc {
    mover: String,
    center: CenterDoc,
    radius: String,
    note: String,
}

#[derive(Serialize, Deserialize)]
struct AdversaryDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lookahead: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CombinatorDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    thetas: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct TranscriptDoc {
    theta: String,
    alpha: String,
    beta: String,
    seed: Option<u64>,
    rounds: usize,
    scan_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    adversary: Option<AdversaryDoc>,
    combinator: CombinatorDoc,
    moves: Vec<MoveDoc>,
}

fn center_doc(c: &CirclePoint) -> Result<CenterDoc> {
    let a = c.form().integer_theta_coeff().ok_or_else(|| {
        EngineError::Other("ball center with non-integer theta coefficient".into())
    })?;
    Ok(CenterDoc { a: a.to_string(), b: rational_to_string(&c.form().constant) })
}

fn center_from_doc(d: &CenterDoc, theta: &ThetaSpec) -> Result<CirclePoint> {
    let a: BigInt = d
        .a
        .parse()
        .map_err(|_| EngineError::Other(format!("bad integer '{}'", d.a)))?;
    let b = rational_from_string(&d.b)?;
    let p = theta_arith::reduce_mod_one(&LinearForm::new(a, b), theta)?;
    Ok(p)
}

pub fn transcript_to_json(t: &Transcript) -> Result<String> {
    let mut moves = Vec::with_capacity(t.moves.len());
    for mv in &t.moves {
        moves.push(MoveDoc {
            mover: match mv.mover {
                Mover::Black => "B".into(),
                Mover::White => "W".into(),
            },
            center: center_doc(&mv.ball.center)?,
            radius: rational_to_string(&mv.ball.radius),
            note: mv.note.clone(),
        });
    }
    let combinator = match &t.config.combinator {
        CombinatorDesc::Plain => CombinatorDoc { kind: "plain".into(), thetas: None },
        CombinatorDesc::TwoSided => CombinatorDoc { kind: "two_sided".into(), thetas: None },
        CombinatorDesc::MultiTheta { thetas } => CombinatorDoc {
            kind: "multi_theta".into(),
            thetas: Some(thetas.iter().map(|t| t.to_string()).collect()),
        },
    };
    let doc = TranscriptDoc {
        theta: t.config.theta.to_string(),
        alpha: rational_to_string(&t.config.alpha),
        beta: rational_to_string(&t.config.beta),
        seed: t.config.seed,
        rounds: t.config.max_rounds,
        scan_cap: t.config.scan_cap,
        adversary: t.config.adversary.as_ref().map(|a| AdversaryDoc {
            kind: a.kind.clone(),
            seed: a.seed,
            lookahead: a.lookahead,
            source: a.source.clone(),
        }),
        combinator,
        moves,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| EngineError::Other(e.to_string()))
}

pub fn transcript_from_json(s: &str) -> Result<Transcript> {
    let doc: TranscriptDoc =
        serde_json::from_str(s).map_err(|e| EngineError::Other(format!("bad transcript: {e}")))?;
    let theta = ThetaSpec::parse(&doc.theta).map_err(EngineError::Arith)?;
    let combinator = match doc.combinator.kind.as_str() {
        "plain" => CombinatorDesc::Plain,
        "two_sided" => CombinatorDesc::TwoSided,
        "multi_theta" => {
            let mut thetas = Vec::new();
            for ts in doc.combinator.thetas.unwrap_or_default() {
                thetas.push(ThetaSpec::parse(&ts).map_err(EngineError::Arith)?);
            }
            CombinatorDesc::MultiTheta { thetas }
        }
        other => return Err(EngineError::Other(format!("unknown combinator '{other}'"))),
    };
    let mut moves = Vec::with_capacity(doc.moves.len());
    for (i, m) in doc.moves.iter().enumerate() {
        let mover = match m.mover.as_str() {
            "B" => Mover::Black,
            "W" => Mover::White,
            other => return Err(EngineError::Other(format!("unknown mover '{other}'"))),
        };
        let center = center_from_doc(&m.center, &theta)?;
        let radius = rational_from_string(&m.radius)?;
        let ball = CircleInterval::new(center, radius).map_err(EngineError::Arith)?;
        moves.push(Move { mover, ball, round: i / 2 + 1, note: m.note.clone() });
    }
    if moves.is_empty() {
        return Err(EngineError::Other("transcript has no moves".into()));
    }
    let initial_black = moves[0].ball.clone();
    let config = GameConfig {
        alpha: rational_from_string(&doc.alpha)?,
        beta: rational_from_string(&doc.beta)?,
        theta,
        max_rounds: doc.rounds,
        initial_black,
        seed: doc.seed,
        scan_cap: doc.scan_cap,
        adversary: doc.adversary.map(|a| AdversaryTag {
            kind: a.kind,
            seed: a.seed,
            lookahead: a.lookahead,
            source: a.source,
        }),
        combinator,
    };
    Ok(Transcript::from_parts(config, moves))
}
