//! Convergents `p_i/q_i`, the error ladder `Delta_i = |q_i*theta - p_i|`, the
//! generation structure of the orbit `{theta*q}` and the index searches the
//! dodging strategy needs. Everything is exact; the brute orbit scan uses the
//! fixed-point enclosure layer as a pre-filter only.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use thiserror::Error;

use theta_arith::approx::{ceil_scaled, circle_distance_scaled, floor_scaled, ThetaScaled};
use theta_arith::{circle_distance, CircleInterval, CirclePoint, LinearForm, ThetaSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] theta_arith::Error),

    /// An exhaustive q-scan would have to walk past the configured cap.
    #[error("orbit scan needs q up to {required} but the cap is {cap}")]
    ScanCapExceeded { required: BigInt, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// The i-th convergent `p_i/q_i` of theta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
}

pub fn convergent(theta: &ThetaSpec, i: usize) -> Result<Convergent> {
    let (p, q) = theta.convergent_pair(i)?;
    Ok(Convergent { index: i, p, q })
}

/// `Delta_i = |q_i*theta - p_i|` as an exact positive form, together with the
/// strict rational bounds `1/(q_{i+1}+q_i) < Delta_i < 1/q_{i+1}`.
///
/// For `i >= 1` this equals the circle norm of `theta*q_i`; at `i = 0` with
/// `a_1 = 1` the circle norm is `1 - theta` while `Delta_0 = theta`, and it is
/// the latter that the convergent facts require.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta {
    pub index: usize,
    pub value: LinearForm,
    pub lower: BigRational,
    pub upper: BigRational,
}

pub fn delta(theta: &ThetaSpec, i: usize) -> Result<Delta> {
    let (p, q) = theta.convergent_pair(i)?;
    let (_, q1) = theta.convergent_pair(i + 1)?;
    // (-1)^i (q_i theta - p_i) is positive.
    let raw = LinearForm::new(q.clone(), BigRational::from(-p));
    let value = if i % 2 == 0 { raw } else { -raw };
    let lower = BigRational::new(BigInt::one(), &q1 + &q);
    let upper = BigRational::new(BigInt::one(), q1);
    Ok(Delta { index: i, value, lower, upper })
}

/// Compare `Delta_i` against an exact rational, using the rational bounds as
/// a pre-filter before the exact form comparison.
pub fn delta_cmp_rational(theta: &ThetaSpec, i: usize, x: &BigRational) -> Result<Ordering> {
    let d = delta(theta, i)?;
    if &d.upper <= x {
        return Ok(Ordering::Less); // Delta < upper <= x
    }
    if &d.lower >= x {
        return Ok(Ordering::Greater);
    }
    Ok(d.value.sub_rational(x).sign(theta)?)
}

/// Smallest index `i >= from` with `Delta_i < x` (for rational `x > 0`).
pub fn first_delta_below(theta: &ThetaSpec, from: usize, x: &BigRational) -> Result<usize> {
    assert!(x.is_positive());
    let mut i = from;
    loop {
        if delta_cmp_rational(theta, i, x)? == Ordering::Less {
            return Ok(i);
        }
        i += 1;
    }
}

/// Generation index of a positive integer `q`: the unique `i` with
/// `q_i <= q < q_{i+1}`. Integers below `q_1` (they exist when `a_1 >= 2`)
/// land in generation 0.
pub fn generation_of(theta: &ThetaSpec, q: &BigInt) -> Result<usize> {
    assert!(q >= &BigInt::one(), "orbit indices are positive");
    // smallest j with q_j > q; the answer is j-1
    let mut j = 1usize;
    loop {
        let (_, qj) = theta.convergent_pair(j)?;
        if &qj > q {
            return Ok(j - 1);
        }
        j += 1;
    }
}

/// An orbit point `theta*q` reduced to the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    pub q: u64,
    pub point: CirclePoint,
}

/// Exhaustive, exact list of orbit points `theta*q` with
/// `1 <= q < q_{max_generation+1}` and `dist(theta*q, window.center) <=
/// window.radius`, sorted by `q`.
///
/// The scan refuses to run past `scan_cap`; callers lower the depth or raise
/// the cap. The per-q filter is the scaled enclosure; only candidates whose
/// enclosure cannot decide are re-checked exactly. A brute q-scan is the
/// point here: the three-gap structure of the orbit admits a faster
/// structured enumeration, but at desk scale the scan is exact, simple and
/// directly testable.
pub fn orbit_points_near(
    theta: &ThetaSpec,
    window: &CircleInterval,
    max_generation: usize,
    scan_cap: u64,
) -> Result<Vec<OrbitPoint>> {
    let (_, q_end) = theta.convergent_pair(max_generation + 1)?;
    if q_end > BigInt::from(scan_cap) {
        return Err(Error::ScanCapExceeded { required: q_end, cap: scan_cap });
    }
    let q_end = q_end.to_u64().expect("within cap");
    orbit_scan(theta, window, 1, q_end, scan_cap)
}

/// Same scan over an explicit half-open q range `[q_lo, q_hi)`.
pub fn orbit_scan(
    theta: &ThetaSpec,
    window: &CircleInterval,
    q_lo: u64,
    q_hi: u64,
    scan_cap: u64,
) -> Result<Vec<OrbitPoint>> {
    if q_hi > scan_cap {
        return Err(Error::ScanCapExceeded { required: BigInt::from(q_hi), cap: scan_cap });
    }
    let ts = ThetaScaled::new(theta)?;
    let (clo, chi) = window.center.form().enclosure(theta, theta_arith::approx::SCALE_BITS + 16)?;
    let c_scaled = (floor_scaled(&clo), ceil_scaled(&chi));
    let r_floor = floor_scaled(&window.radius);
    let r_ceil = ceil_scaled(&window.radius);

    let mut out = Vec::new();
    for q in q_lo..q_hi {
        let verdict = match ts.frac_multiple(q) {
            Some((flo, fhi)) => {
                let d = circle_distance_scaled((flo as i128, fhi as i128), c_scaled);
                if d.1 <= r_floor {
                    Some(true)
                } else if d.0 > r_ceil {
                    Some(false)
                } else {
                    None
                }
            }
            None => None,
        };
        let include = match verdict {
            Some(v) => v,
            None => {
                let p = CirclePoint::orbit(q, theta)?;
                let d = circle_distance(&p, &window.center, theta)?;
                d.sub_rational(&window.radius).sign(theta)? != Ordering::Greater
            }
        };
        if include {
            out.push(OrbitPoint { q, point: CirclePoint::orbit(q, theta)? });
        }
    }
    Ok(out)
}

/// Smallest `m >= 1` with `Delta_{N+m+1} < s*Delta_N <= Delta_{N+m}`, or 0
/// when `s*Delta_N > Delta_{N+1}` (the strategy's Case A dispatch).
pub fn find_drop(theta: &ThetaSpec, n: usize, s: &BigRational) -> Result<usize> {
    assert!(s.is_positive() && s < &BigRational::one());
    let dn = delta(theta, n)?;
    let threshold = dn.value.mul_rational(s);
    if threshold.cmp_form(&delta(theta, n + 1)?.value, theta)? == Ordering::Greater {
        return Ok(0);
    }
    // Termination: Delta_{i+2} < Delta_i / 2, so m <= 2*ceil(log2(1/s)) + 2.
    let bound = 2 * (bits_of_inverse(s) + 1) + 2;
    let mut m = 1usize;
    loop {
        let next = delta(theta, n + m + 1)?;
        if next.value.cmp_form(&threshold, theta)? == Ordering::Less {
            // Sandwich holds: the upper side Delta_{N+m} >= s*Delta_N follows
            // from m being minimal (m = 1 passed the dispatch test above).
            return Ok(m);
        }
        m += 1;
        assert!(m <= bound, "drop search exceeded its provable bound");
    }
}

fn bits_of_inverse(s: &BigRational) -> usize {
    // ceil(log2(1/s)) for s in (0,1)
    let inv = s.recip();
    let c = inv.ceil().to_integer();
    c.bits() as usize
}
