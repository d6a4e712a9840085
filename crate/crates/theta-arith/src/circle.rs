use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Zero};

use crate::form::LinearForm;
use crate::{Error, Result, ThetaSpec};

/// A point on the circle R/Z, canonically reduced so `0 <= value < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirclePoint {
    form: LinearForm,
}

impl CirclePoint {
    /// The reduced representative; its value lies in [0, 1).
    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn zero() -> Self {
        CirclePoint { form: LinearForm::zero() }
    }

    pub fn from_rational(b: BigRational, theta: &ThetaSpec) -> Self {
        // Rational reduction never consults the stream.
        reduce_mod_one(&LinearForm::from_rational(b), theta).expect("rational reduction is total")
    }

    pub fn orbit(q: impl Into<BigInt>, theta: &ThetaSpec) -> Result<Self> {
        reduce_mod_one(&LinearForm::theta_multiple(q), theta)
    }

    /// Translate by an exact form and re-reduce.
    pub fn translate(&self, by: &LinearForm, theta: &ThetaSpec) -> Result<Self> {
        reduce_mod_one(&(self.form.clone() + by.clone()), theta)
    }

    pub fn negate(&self, theta: &ThetaSpec) -> Result<Self> {
        reduce_mod_one(&(-self.form.clone()), theta)
    }
}

/// Closed arc `{x : dist(x, center) <= radius}` with exact rational radius in
/// (0, 1/2].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleInterval {
    pub center: CirclePoint,
    pub radius: BigRational,
}

impl CircleInterval {
    pub fn new(center: CirclePoint, radius: BigRational) -> Result<Self> {
        if radius <= BigRational::zero() || radius > BigRational::new(1.into(), 2.into()) {
            return Err(Error::InvalidTheta(format!("interval radius {radius} outside (0, 1/2]")));
        }
        Ok(CircleInterval { center, radius })
    }

    pub fn diameter(&self) -> BigRational {
        &self.radius + &self.radius
    }
}

/// Reduce `a*theta + b` modulo 1 into [0, 1). The reduction only ever changes
/// the constant part by an integer.
pub fn reduce_mod_one(f: &LinearForm, theta: &ThetaSpec) -> Result<CirclePoint> {
    let k = floor_of(f, theta)?;
    let form = f.sub_rational(&BigRational::from(k));
    Ok(CirclePoint { form })
}

/// Exact floor of `a*theta + b`.
fn floor_of(f: &LinearForm, theta: &ThetaSpec) -> Result<BigInt> {
    if f.theta_coeff.is_zero() {
        return Ok(f.constant.floor().to_integer());
    }
    // Narrow with a rational bracket, then settle a possible straddle exactly.
    let mut bits = 32u32;
    let mut last_width: Option<BigRational> = None;
    loop {
        let (lo, hi) = f.enclosure(theta, bits)?;
        let (fl, fh) = (lo.floor().to_integer(), hi.floor().to_integer());
        if fl == fh {
            return Ok(fl);
        }
        if &fh - &fl == BigInt::one() {
            // Value compares against the single integer fh exactly.
            let against = f.sub_rational(&BigRational::from(fh.clone()));
            return match against.sign(theta)? {
                Ordering::Less => Ok(fl),
                // Equality cannot happen: a != 0 makes the form irrational.
                _ => Ok(fh),
            };
        }
        // A finite stream caps the enclosure; a stalled bracket means the
        // stored depth cannot separate the value from two integers.
        let width = &hi - &lo;
        if last_width.as_ref() == Some(&width) {
            let depth = theta.depth().unwrap_or(usize::MAX);
            return Err(Error::StreamExhausted { needed: depth + 1, depth });
        }
        last_width = Some(width);
        bits = bits.saturating_mul(2);
    }
}

/// `dist(x, y) = min(|x-y| mod 1, 1 - |x-y| mod 1)` as an exact form with a
/// decided sign; symmetric and at most 1/2.
pub fn circle_distance(x: &CirclePoint, y: &CirclePoint, theta: &ThetaSpec) -> Result<LinearForm> {
    let d = reduce_mod_one(&(x.form.clone() - y.form.clone()), theta)?;
    let half = BigRational::new(1.into(), 2.into());
    let over_half = d.form.sub_rational(&half).sign(theta)? == Ordering::Greater;
    if over_half {
        Ok(LinearForm::from_rational(BigRational::one()) - d.form)
    } else {
        Ok(d.form)
    }
}

/// Signed offset of `p` from `center`, reduced into [-1/2, 1/2).
pub fn offset_from(p: &CirclePoint, center: &CirclePoint, theta: &ThetaSpec) -> Result<LinearForm> {
    let u = reduce_mod_one(&(p.form.clone() - center.form.clone()), theta)?;
    let half = BigRational::new(1.into(), 2.into());
    if u.form.sub_rational(&half).sign(theta)? != Ordering::Less {
        Ok(u.form.sub_rational(&BigRational::one()))
    } else {
        Ok(u.form)
    }
}

/// True iff `inner` lies inside `outer` as closed arcs:
/// `dist(centers) <= outer.radius - inner.radius`, decided exactly.
pub fn interval_contains(
    outer: &CircleInterval,
    inner: &CircleInterval,
    theta: &ThetaSpec,
) -> Result<bool> {
    let slack = &outer.radius - &inner.radius;
    if slack < BigRational::zero() {
        return Ok(false);
    }
    let d = circle_distance(&outer.center, &inner.center, theta)?;
    Ok(d.sub_rational(&slack).sign(theta)? != Ordering::Greater)
}

/// An obstacle arc for gap computations; unlike `CircleInterval` the radius
/// may be an exact irrational form (the dodge radii (alpha*beta)*Delta/4 are).
#[derive(Clone, Debug)]
pub struct ObstacleArc {
    pub center: CirclePoint,
    pub radius: LinearForm,
}

impl ObstacleArc {
    pub fn from_interval(iv: &CircleInterval) -> Self {
        ObstacleArc {
            center: iv.center.clone(),
            radius: LinearForm::from_rational(iv.radius.clone()),
        }
    }
}

/// A maximal subarc of a window that meets no obstacle interior, described by
/// signed offsets from the window center (so `-r <= lo <= hi <= r`).
#[derive(Clone, Debug)]
pub struct GapArc {
    pub lo: LinearForm,
    pub hi: LinearForm,
}

impl GapArc {
    pub fn width(&self) -> LinearForm {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint_double(&self) -> LinearForm {
        // lo + hi; halving can leave the integer theta-coefficient lattice,
        // so ties and midpoint comparisons work on the doubled value.
        self.lo.clone() + self.hi.clone()
    }

    pub fn endpoints(&self, window: &CircleInterval, theta: &ThetaSpec) -> Result<(CirclePoint, CirclePoint)> {
        Ok((window.center.translate(&self.lo, theta)?, window.center.translate(&self.hi, theta)?))
    }
}

/// Maximal closed subarcs of `window` that meet no obstacle interior, sorted
/// by offset; obstacle radii may be exact forms.
pub fn gap_complement(
    window: &CircleInterval,
    obstacles: &[ObstacleArc],
    theta: &ThetaSpec,
) -> Result<Vec<GapArc>> {
    let r = LinearForm::from_rational(window.radius.clone());
    let neg_r = -r.clone();

    // Collect obstacle footprints as [lo, hi] offset segments clipped to
    // [-r, r]. An obstacle can reach the window across the wrap point, so
    // consider the three unit translates of each arc.
    let mut segs: Vec<(LinearForm, LinearForm)> = Vec::new();
    for ob in obstacles {
        let u = offset_from(&ob.center, &window.center, theta)?;
        for shift in [-1i32, 0, 1] {
            let s = BigRational::from(BigInt::from(shift));
            let c = u.add_rational(&s);
            let lo = c.clone() - ob.radius.clone();
            let hi = c + ob.radius.clone();
            // Clip to the window, tracking emptiness exactly.
            let lo_c = if lo.cmp_form(&neg_r, theta)? == Ordering::Less { neg_r.clone() } else { lo };
            let hi_c = if hi.cmp_form(&r, theta)? == Ordering::Greater { r.clone() } else { hi };
            if lo_c.cmp_form(&hi_c, theta)? != Ordering::Greater {
                segs.push((lo_c, hi_c));
            }
        }
    }

    // Insertion sort by lo (obstacle lists are short and comparisons can
    // fail on exhausted streams, so avoid sort_by's panicky closure).
    let mut sorted: Vec<(LinearForm, LinearForm)> = Vec::with_capacity(segs.len());
    for seg in segs {
        let mut at = sorted.len();
        for (j, other) in sorted.iter().enumerate() {
            if seg.0.cmp_form(&other.0, theta)? == Ordering::Less {
                at = j;
                break;
            }
        }
        sorted.insert(at, seg);
    }
    let mut merged: Vec<(LinearForm, LinearForm)> = Vec::new();
    for (lo, hi) in sorted {
        match merged.last_mut() {
            Some((_, last_hi)) if lo.cmp_form(last_hi, theta)? != Ordering::Greater => {
                if hi.cmp_form(last_hi, theta)? == Ordering::Greater {
                    *last_hi = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }

    // Complement inside [-r, r].
    let mut gaps = Vec::new();
    let mut cursor = neg_r.clone();
    for (lo, hi) in &merged {
        if lo.cmp_form(&cursor, theta)? == Ordering::Greater {
            gaps.push(GapArc { lo: cursor.clone(), hi: lo.clone() });
        }
        if hi.cmp_form(&cursor, theta)? == Ordering::Greater {
            cursor = hi.clone();
        }
    }
    if cursor.cmp_form(&r, theta)? == Ordering::Less {
        gaps.push(GapArc { lo: cursor, hi: r });
    }
    Ok(gaps)
}

/// Spec-facing wrapper over [`gap_complement`] for rational-radius obstacles;
/// returns absolute arc endpoints.
pub fn interval_gap_complement(
    window: &CircleInterval,
    obstacles: &[CircleInterval],
    theta: &ThetaSpec,
) -> Result<Vec<(CirclePoint, CirclePoint)>> {
    let obs: Vec<ObstacleArc> = obstacles.iter().map(ObstacleArc::from_interval).collect();
    let gaps = gap_complement(window, &obs, theta)?;
    gaps.iter().map(|g| g.endpoints(window, theta)).collect()
}
