//! The White strategy that makes the surviving point provably badly
//! approximable: track the anchor index of the current radius window, dodge
//! the orbit points of each generation block inside exact-arithmetic gaps,
//! and advance the two-case induction until either the quotient stream or the
//! scan cap runs out, after which play degrades to centered shrinks.
//!
//! All inequality bookkeeping is exact. Rational Delta bounds are used only
//! as pre-filters inside `cont-frac`; every decision that matters is a
//! `LinearForm` sign.
//!
//! For streams with bounded partial quotients the ratio `Delta_n/Delta_{n+1}`
//! is bounded, which would admit a simpler one-case variant of this strategy
//! (at a ratio-dependent White constant); that optimization is intentionally
//! not implemented, the two-case machinery covers every irrational.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed};

use cont_frac::{delta, delta_cmp_rational, find_drop, orbit_scan, OrbitPoint};
use game_engine::notes::{IndexSnapshot, MoveNote};
use game_engine::{EngineError, Reply, RunReport, Transcript, WhiteStrategy};
use theta_arith::{
    circle_distance, gap_complement, CircleInterval, CirclePoint, GapArc, LinearForm,
    ObstacleArc, ThetaSpec,
};

type Result<T> = std::result::Result<T, EngineError>;

/// Indices produced by the anchor alignment: the radius window
/// `(alpha*beta)*Delta_anchor < x <= Delta_anchor` holds for
/// `x = two_rho1 * (alpha*beta)^n0`, and `anchor` is the largest index whose
/// window contains that fixed `x` (maximality is what the Case B exclusion
/// argument consumes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub n_init: usize,
    pub anchor: usize,
    pub n0: usize,
    pub x: BigRational,
}

/// Compute the anchor indices from `two_rho1 = 2*rho(B_1)` once the warmup
/// condition `two_rho1 <= Delta_1` holds.
pub fn align_indices(
    theta: &ThetaSpec,
    ab: &BigRational,
    two_rho1: &BigRational,
) -> cont_frac::Result<Alignment> {
    // First N with Delta_N < two_rho1; warmup guarantees N >= 2.
    let n_init = cont_frac::first_delta_below(theta, 2, two_rho1)?;
    // Smallest n0 >= 1 with two_rho1 * ab^n0 <= Delta_{n_init}.
    let mut n0 = 1usize;
    let mut x = two_rho1 * ab;
    while delta_cmp_rational(theta, n_init, &x)? == Ordering::Less {
        x = &x * ab;
        n0 += 1;
        assert!(n0 < 100_000, "alignment ladder failed to land");
    }
    // Maximality: the last index whose Delta still dominates x. The window's
    // lower bound holds there automatically because it holds at n_init and
    // the Delta ladder is strictly decreasing.
    let mut anchor = n_init;
    while delta_cmp_rational(theta, anchor + 1, &x)? != Ordering::Less {
        anchor += 1;
        assert!(anchor < n_init + 100_000, "anchor search failed to stop");
    }
    Ok(Alignment { n_init, anchor, n0, x })
}

/// The obstacle family for one dodge move: every orbit point `theta*q` with
/// `1 <= q < q_{gen_hi+1}` near the current ball, plus the integer point 0,
/// each inflated to a closed arc of exact radius `(alpha*beta)*Delta_top/4`.
/// (The zero point is what makes the multiplicative-law lower bound available
/// for the next generation; the pairwise spacing fact covers it.)
#[derive(Debug, Clone)]
pub struct DodgeSet {
    pub gen_lo: usize,
    pub gen_hi: usize,
    pub radius: LinearForm,
    pub points: Vec<OrbitPoint>,
    pub include_zero: bool,
}

/// Collect the dodge set for `ball`; errors with `ScanCapExceeded` when the
/// enumeration horizon `q_{gen_hi+1}` lies beyond the cap.
pub fn build_dodge_set(
    theta: &ThetaSpec,
    ball: &CircleInterval,
    gen_lo: usize,
    gen_hi: usize,
    ab: &BigRational,
    scan_cap: u64,
) -> cont_frac::Result<DodgeSet> {
    let d = delta(theta, gen_hi)?;
    let quarter = ab / BigRational::from_integer(4.into());
    let radius = d.value.mul_rational(&quarter);
    let (_, q_end) = theta.convergent_pair(gen_hi + 1)?;
    if q_end > BigInt::from(scan_cap) {
        return Err(cont_frac::Error::ScanCapExceeded { required: q_end, cap: scan_cap });
    }
    let q_end = u64::try_from(&q_end).expect("within cap");
    // Over-approximate the reach of an obstacle arc with the rational upper
    // Delta bound; extras are harmless, the gap computation is exact.
    let collect_radius = &ball.radius + &quarter * &d.upper;
    let window = CircleInterval::new(ball.center.clone(), collect_radius)
        .map_err(cont_frac::Error::Arith)?;
    let points = orbit_scan(theta, &window, 1, q_end, scan_cap)?;
    Ok(DodgeSet { gen_lo, gen_hi, radius, points, include_zero: true })
}

/// Pick the White ball inside `ball` that misses every obstacle arc: compute
/// the maximal free gaps, take the widest (ties: midpoint closest to the
/// ball's center, then lexicographically smaller midpoint), and center W at a
/// deterministic rational point of the gap's middle. The returned closed
/// interval is verified disjoint from every obstacle, exactly.
pub fn dodge_move(
    theta: &ThetaSpec,
    ball: &CircleInterval,
    dodge: &DodgeSet,
    alpha: &BigRational,
    round: usize,
) -> Result<CircleInterval> {
    let mut obstacles: Vec<ObstacleArc> = dodge
        .points
        .iter()
        .map(|p| ObstacleArc { center: p.point.clone(), radius: dodge.radius.clone() })
        .collect();
    if dodge.include_zero {
        obstacles.push(ObstacleArc { center: CirclePoint::zero(), radius: dodge.radius.clone() });
    }
    let gaps = gap_complement(ball, &obstacles, theta).map_err(EngineError::Arith)?;

    let r_w = alpha * &ball.radius;
    let two_r_w = &r_w + &r_w;
    let mut best: Option<GapArc> = None;
    for g in gaps {
        if g.width().sub_rational(&two_r_w).sign(theta).map_err(EngineError::Arith)?
            != Ordering::Greater
        {
            continue; // cannot fit a closed W strictly inside
        }
        best = match best {
            None => Some(g),
            Some(b) => Some(better_gap(b, g, theta)?),
        };
    }
    let Some(gap) = best else {
        return Err(EngineError::NoGap { round });
    };

    // Admissible center offsets form the open interval
    // (gap.lo + r_w, gap.hi - r_w); pick a deterministic rational inside.
    let lo = gap.lo.add_rational(&r_w);
    let hi = gap.hi.sub_rational(&r_w);
    let offset = rational_strictly_between(&lo, &hi, theta)?;
    let center = ball
        .center
        .translate(&LinearForm::from_rational(offset), theta)
        .map_err(EngineError::Arith)?;
    let white = CircleInterval::new(center, r_w.clone()).map_err(EngineError::Arith)?;

    // Post-verify exactly: disjointness from every obstacle and containment.
    for ob in &obstacles {
        let d = circle_distance(&white.center, &ob.center, theta).map_err(EngineError::Arith)?;
        let needed = ob.radius.add_rational(&r_w);
        if (d - needed).sign(theta).map_err(EngineError::Arith)? != Ordering::Greater {
            return Err(EngineError::Contradiction {
                round,
                msg: "dodge produced a non-disjoint ball".into(),
            });
        }
    }
    if !theta_arith::interval_contains(ball, &white, theta).map_err(EngineError::Arith)? {
        return Err(EngineError::Contradiction { round, msg: "dodge left the ball".into() });
    }
    Ok(white)
}

fn better_gap(a: GapArc, b: GapArc, theta: &ThetaSpec) -> Result<GapArc> {
    let by_width = b.width().cmp_form(&a.width(), theta).map_err(EngineError::Arith)?;
    match by_width {
        Ordering::Greater => return Ok(b),
        Ordering::Less => return Ok(a),
        Ordering::Equal => {}
    }
    // Tie: midpoint closest to the ball center (offset 0), via |lo+hi|.
    let am = a.midpoint_double();
    let bm = b.midpoint_double();
    match abs_cmp_forms(&bm, &am, theta)? {
        Ordering::Less => return Ok(b),
        Ordering::Greater => return Ok(a),
        Ordering::Equal => {}
    }
    // Deterministic final tie-break: lexicographic on (theta_coeff, constant).
    let key = |f: &LinearForm| (f.theta_coeff.clone(), f.constant.clone());
    Ok(if key(&bm) < key(&am) { b } else { a })
}

fn abs_cmp_forms(x: &LinearForm, y: &LinearForm, theta: &ThetaSpec) -> Result<Ordering> {
    let ax = abs_form(x, theta)?;
    let ay = abs_form(y, theta)?;
    ax.cmp_form(&ay, theta).map_err(EngineError::Arith)
}

fn abs_form(f: &LinearForm, theta: &ThetaSpec) -> Result<LinearForm> {
    Ok(match f.sign(theta).map_err(EngineError::Arith)? {
        Ordering::Less => -f.clone(),
        _ => f.clone(),
    })
}

/// A rational strictly between two exact forms with `lo < hi`, found by
/// refining enclosures; deterministic given the refinement schedule.
fn rational_strictly_between(
    lo: &LinearForm,
    hi: &LinearForm,
    theta: &ThetaSpec,
) -> Result<BigRational> {
    let mut bits = 64u32;
    loop {
        let (_, lo_hi) = lo.enclosure(theta, bits).map_err(EngineError::Arith)?;
        let (hi_lo, _) = hi.enclosure(theta, bits).map_err(EngineError::Arith)?;
        if lo_hi < hi_lo {
            return Ok((lo_hi + hi_lo) / BigRational::from_integer(2.into()));
        }
        bits = bits.saturating_mul(2);
        if bits > 1 << 22 {
            return Err(EngineError::Other("gap too thin to center a ball".into()));
        }
    }
}

#[derive(Debug, Clone)]
struct PlannedDodge {
    round: usize,
    gen_lo: usize,
    gen_hi: usize,
    /// New anchor level once this dodge lands, plus the exact ball size the
    /// maximal-extension search assumed; both are re-asserted at execution.
    rearm: Option<(usize, BigRational)>,
}

#[derive(Debug, Clone)]
enum Phase {
    Warmup,
    Align { anchor_round: usize, anchor: usize, n0: usize },
    Cycle { pending: Vec<PlannedDodge>, case: char, snapshot: IndexSnapshot },
    Done,
}

/// The orbit-dodging White strategy. `beta` is this strategy's own Black
/// ratio: inside an n-way dovetail that is the effective
/// `beta * (alpha*beta)^(n-1)` of the subsampled game.
pub struct OrbitDodger {
    theta: ThetaSpec,
    alpha: BigRational,
    beta: BigRational,
    ab: BigRational,
    scan_cap: u64,
    label: String,
    phase: Phase,
    first_anchor: Option<usize>,
    dodged_hi: Option<usize>,
}

impl OrbitDodger {
    pub fn new(theta: ThetaSpec, alpha: BigRational, beta: BigRational, scan_cap: u64) -> Self {
        assert!(alpha.is_positive() && alpha < BigRational::one());
        assert!(beta.is_positive() && beta < BigRational::one());
        let ab = &alpha * &beta;
        OrbitDodger {
            theta,
            alpha,
            beta,
            ab,
            scan_cap,
            label: "bad_plus".into(),
            phase: Phase::Warmup,
            first_anchor: None,
            dodged_hi: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Highest generation whose orbit points are certified dodged so far.
    pub fn dodged_up_to(&self) -> Option<usize> {
        self.dodged_hi
    }

    /// Anchor level of the first dodge (the certificate range starts at
    /// `q_{anchor+1}`).
    pub fn first_anchor(&self) -> Option<usize> {
        self.first_anchor
    }

    fn shrink(&self, ball: &CircleInterval, note: MoveNote) -> Result<Reply> {
        let radius = &self.alpha * &ball.radius;
        let w = CircleInterval::new(ball.center.clone(), radius).map_err(EngineError::Arith)?;
        Ok(Reply { ball: w, note: note.render() })
    }

    /// Stream exhaustion and the scan cap end the dodging horizon; they are
    /// not failures. The game coasts in Done from there on.
    fn degrade(&self, e: &cont_frac::Error) -> bool {
        matches!(
            e,
            cont_frac::Error::Arith(theta_arith::Error::StreamExhausted { .. })
                | cont_frac::Error::ScanCapExceeded { .. }
        )
    }

    fn plan_cycle(
        &self,
        anchor: usize,
        x: &BigRational,
        round: usize,
        n0: usize,
    ) -> cont_frac::Result<(Vec<PlannedDodge>, char, IndexSnapshot)> {
        let theta = &self.theta;
        let m = find_drop(theta, anchor, &self.ab)?;
        if m == 0 {
            // Case A: the Delta ladder drops straight past the window.
            let (n1, x1) = self.ladder_steps(x, anchor + 1)?;
            let m_ext = self.max_extension(anchor + 1, &x1)?;
            let top = anchor + m_ext;
            let snapshot =
                IndexSnapshot { anchor, n0, n1: Some(n1), m: None, m_ext: Some(m_ext) };
            let pending = vec![PlannedDodge {
                round: round + n1,
                gen_lo: anchor + 1,
                gen_hi: top,
                rearm: Some((top, x1)),
            }];
            Ok((pending, 'A', snapshot))
        } else {
            // Case B. The proof's excluded branch would put x itself inside
            // the window at anchor+m, contradicting anchor maximality.
            if delta_cmp_rational(theta, anchor + m, x)? != Ordering::Less {
                return Err(contradiction_sentinel());
            }
            let (n1, x1) = self.ladder_steps(x, anchor + m + 1)?;
            let m_ext = self.max_extension(anchor + m + 1, &x1)?;
            let top = anchor + m + m_ext;
            let snapshot =
                IndexSnapshot { anchor, n0, n1: Some(n1), m: Some(m), m_ext: Some(m_ext) };
            let pending = if n1 == 1 {
                vec![PlannedDodge {
                    round: round + 1,
                    gen_lo: anchor + 1,
                    gen_hi: top,
                    rearm: Some((top, x1)),
                }]
            } else {
                vec![
                    PlannedDodge {
                        round: round + 1,
                        gen_lo: anchor + 1,
                        gen_hi: anchor + m,
                        rearm: None,
                    },
                    PlannedDodge {
                        round: round + n1,
                        gen_lo: anchor + m + 1,
                        gen_hi: top,
                        rearm: Some((top, x1)),
                    },
                ]
            };
            Ok((pending, 'B', snapshot))
        }
    }

    /// Smallest `n1 >= 1` with `x * ab^n1 <= Delta_target`, plus that value.
    fn ladder_steps(
        &self,
        x: &BigRational,
        target: usize,
    ) -> cont_frac::Result<(usize, BigRational)> {
        let mut n1 = 1usize;
        let mut v = x * &self.ab;
        while delta_cmp_rational(&self.theta, target, &v)? == Ordering::Less {
            v = &v * &self.ab;
            n1 += 1;
            assert!(n1 < 100_000, "ladder failed to land");
        }
        Ok((n1, v))
    }

    /// Count of consecutive levels from `base` whose Delta still dominates
    /// `x1` (at least 1 by the ladder); the final level is `base + M - 1`.
    fn max_extension(&self, base: usize, x1: &BigRational) -> cont_frac::Result<usize> {
        let mut level = base;
        while delta_cmp_rational(&self.theta, level + 1, x1)? != Ordering::Less {
            level += 1;
            assert!(level < base + 100_000, "extension search failed to stop");
        }
        Ok(level - base + 1)
    }

    /// Exact Lemma-window assertion at a dodge: `ab*Delta < 2 rho(B) <= Delta`.
    fn assert_hypothesis(&self, level: usize, two_rho: &BigRational, round: usize) -> Result<()> {
        let theta = &self.theta;
        let upper = delta_cmp_rational(theta, level, two_rho).map_err(EngineError::from)?;
        if upper == Ordering::Less {
            return Err(EngineError::Contradiction {
                round,
                msg: format!("ball exceeds Delta_{level}"),
            });
        }
        let scaled = two_rho / &self.ab;
        let lower = delta_cmp_rational(theta, level, &scaled).map_err(EngineError::from)?;
        if lower != Ordering::Less {
            return Err(EngineError::Contradiction {
                round,
                msg: format!("ball at or below (alpha beta) Delta_{level}"),
            });
        }
        Ok(())
    }

    fn execute_dodge(
        &mut self,
        ball: &CircleInterval,
        plan: &PlannedDodge,
        case: Option<char>,
        snapshot: &IndexSnapshot,
        round: usize,
    ) -> Result<Option<Reply>> {
        let two_rho = ball.diameter();
        let set = match build_dodge_set(
            &self.theta,
            ball,
            plan.gen_lo,
            plan.gen_hi,
            &self.ab,
            self.scan_cap,
        ) {
            Ok(s) => s,
            Err(e) if self.degrade(&e) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        self.assert_hypothesis(plan.gen_hi, &two_rho, round)?;
        let white = dodge_move(&self.theta, ball, &set, &self.alpha, round)?;
        self.dodged_hi = Some(plan.gen_hi);
        if self.first_anchor.is_none() {
            self.first_anchor = Some(snapshot.anchor);
        }
        let note = MoveNote::Dodge {
            gen_lo: plan.gen_lo,
            gen_hi: plan.gen_hi,
            case,
            snapshot: snapshot.clone(),
        };
        Ok(Some(Reply { ball: white, note: note.render() }))
    }

    fn start_cycle(
        &mut self,
        anchor: usize,
        two_rho: &BigRational,
        round: usize,
        n0: usize,
    ) -> Result<()> {
        match self.plan_cycle(anchor, two_rho, round, n0) {
            Ok((pending, case, snapshot)) => {
                self.phase = Phase::Cycle { pending, case, snapshot };
                Ok(())
            }
            Err(e) if is_contradiction(&e) => Err(EngineError::Contradiction {
                round,
                msg: "case B exclusion branch fired".into(),
            }),
            Err(e) if self.degrade(&e) => {
                self.phase = Phase::Done;
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn contradiction_sentinel() -> cont_frac::Error {
    cont_frac::Error::Arith(theta_arith::Error::InvalidTheta(CONTRADICTION_SENTINEL.into()))
}

const CONTRADICTION_SENTINEL: &str = "case-b-exclusion-violated";

fn is_contradiction(e: &cont_frac::Error) -> bool {
    matches!(
        e,
        cont_frac::Error::Arith(theta_arith::Error::InvalidTheta(msg))
            if msg == CONTRADICTION_SENTINEL
    )
}

impl WhiteStrategy for OrbitDodger {
    fn next_move(&mut self, transcript: &Transcript) -> Result<Reply> {
        let round = transcript.current_round();
        let ball = transcript.last_ball().clone();
        let two_rho = ball.diameter();

        loop {
            match self.phase.clone() {
                Phase::Warmup => {
                    let cmp = match delta_cmp_rational(&self.theta, 1, &two_rho) {
                        Ok(c) => c,
                        Err(e) if self.degrade(&e) => {
                            self.phase = Phase::Done;
                            continue;
                        }
                        Err(e) => return Err(e.into()),
                    };
                    if cmp == Ordering::Less {
                        // Delta_1 < 2 rho: keep shrinking.
                        return self.shrink(&ball, MoveNote::Warmup);
                    }
                    match align_indices(&self.theta, &self.ab, &two_rho) {
                        Ok(al) => {
                            self.phase = Phase::Align {
                                anchor_round: round + al.n0,
                                anchor: al.anchor,
                                n0: al.n0,
                            };
                        }
                        Err(e) if self.degrade(&e) => self.phase = Phase::Done,
                        Err(e) => return Err(e.into()),
                    }
                    continue;
                }
                Phase::Align { anchor_round, anchor, n0 } => {
                    let snapshot = IndexSnapshot { anchor, n0, n1: None, m: None, m_ext: None };
                    if round < anchor_round {
                        return self.shrink(&ball, MoveNote::Align { snapshot });
                    }
                    // The anchor ball arrived: dodge all generations <= anchor.
                    let plan = PlannedDodge { round, gen_lo: 0, gen_hi: anchor, rearm: None };
                    match self.execute_dodge(&ball, &plan, None, &snapshot, round)? {
                        Some(reply) => {
                            self.start_cycle(anchor, &two_rho, round, n0)?;
                            return Ok(reply);
                        }
                        None => {
                            self.phase = Phase::Done;
                            continue;
                        }
                    }
                }
                Phase::Cycle { mut pending, case, snapshot } => {
                    if pending.is_empty() {
                        self.phase = Phase::Done;
                        continue;
                    }
                    if round < pending[0].round {
                        self.phase =
                            Phase::Cycle { pending, case, snapshot: snapshot.clone() };
                        return self.shrink(&ball, MoveNote::Free { case });
                    }
                    let plan = pending.remove(0);
                    debug_assert_eq!(plan.round, round, "dodge rounds advance one by one");
                    match self.execute_dodge(&ball, &plan, Some(case), &snapshot, round)? {
                        Some(reply) => {
                            match &plan.rearm {
                                Some((new_anchor, expected_two_rho)) => {
                                    // The maximal-extension search fixed this
                                    // exact ball size; a mismatch is a bug.
                                    if &two_rho != expected_two_rho {
                                        return Err(EngineError::Contradiction {
                                            round,
                                            msg: "anchor ball size drifted".into(),
                                        });
                                    }
                                    self.start_cycle(
                                        *new_anchor,
                                        &two_rho,
                                        round,
                                        snapshot.n0,
                                    )?;
                                }
                                None => {
                                    self.phase = Phase::Cycle { pending, case, snapshot };
                                }
                            }
                            return Ok(reply);
                        }
                        None => {
                            self.phase = Phase::Done;
                            continue;
                        }
                    }
                }
                Phase::Done => return self.shrink(&ball, MoveNote::Done),
            }
        }
    }

    fn reports(&self, final_white: &CircleInterval) -> Vec<RunReport> {
        let (Some(first), Some(hi)) = (self.first_anchor, self.dodged_hi) else {
            return Vec::new();
        };
        let q_lo = match self.theta.convergent_pair(first + 1) {
            Ok((_, q)) => q,
            Err(_) => return Vec::new(),
        };
        let q_hi = match self.theta.convergent_pair(hi + 1) {
            Ok((_, q)) => q,
            Err(_) => return Vec::new(),
        };
        vec![RunReport {
            label: self.label.clone(),
            theta: self.theta.clone(),
            alpha: self.alpha.clone(),
            beta_effective: self.beta.clone(),
            q_lo,
            q_hi,
            window: final_white.clone(),
        }]
    }
}
