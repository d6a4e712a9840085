use std::cmp::Ordering;

use num::{BigInt, BigRational, Signed, Zero};

use theta_arith::approx::{ceil_scaled, circle_distance_scaled, floor_scaled, ThetaScaled, SCALE_BITS};
use theta_arith::{circle_distance, CircleInterval, CirclePoint, ThetaSpec};

use crate::{Error, Result};

/// The finite, exactly checkable claim a finished game leaves behind:
/// every orbit point `theta*q` with `q_lo <= q < q_hi` satisfies
/// `q * dist(theta*q, w_final) >= c`. The constant is `(alpha*beta/4)^3`
/// with the beta the certifying strategy actually played against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub theta: ThetaSpec,
    pub w_final: CircleInterval,
    pub c: BigRational,
    pub q_lo: u64,
    /// Exclusive upper end; `q_lo >= q_hi` makes the claim vacuous.
    pub q_hi: u64,
    pub transcript_ref: String,
}

impl Certificate {
    /// The paper's constant `((alpha*beta)/4)^3`.
    pub fn constant(alpha: &BigRational, beta: &BigRational) -> BigRational {
        let base = alpha * beta / BigRational::from_integer(4.into());
        &base * &base * &base
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// First failing q and a certified rational upper bound for the achieved
    /// `q * dist` (zero when the orbit point lies inside the interval).
    Refuted { q: u64, margin: BigRational },
}

/// Exhaustive exact scan of the certificate's q-range.
///
/// The per-q filter works on outward-rounded fixed-point enclosures; any q
/// the filter cannot certify is re-decided with exact `LinearForm` signs, and
/// every refutation is confirmed exactly before being reported.
pub fn check_certificate(cert: &Certificate, scan_cap: u64) -> Result<Verdict> {
    if cert.q_lo >= cert.q_hi {
        return Ok(Verdict::Verified); // empty range
    }
    if cert.q_hi > scan_cap {
        return Err(Error::ScanCapExceeded {
            required: BigInt::from(cert.q_hi),
            cap: scan_cap,
        });
    }
    if !cert.c.is_positive() {
        return Err(Error::Malformed("certificate constant must be positive".into()));
    }
    let theta = &cert.theta;
    let ts = ThetaScaled::new(theta)?;
    let (clo, chi) = cert.w_final.center.form().enclosure(theta, SCALE_BITS + 16)?;
    let c_scaled = (floor_scaled(&clo), ceil_scaled(&chi));
    let r_floor = floor_scaled(&cert.w_final.radius);
    let r_ceil = ceil_scaled(&cert.w_final.radius);
    let c_lo = floor_scaled(&cert.c);
    let c_hi = ceil_scaled(&cert.c);

    for q in cert.q_lo..cert.q_hi {
        let fast = ts.frac_multiple(q).and_then(|(flo, fhi)| {
            let d = circle_distance_scaled((flo as i128, fhi as i128), c_scaled);
            // distance to the closed arc: (dist_to_center - radius)+
            let lo = (d.0 - r_ceil).max(0);
            let hi = (d.1 - r_floor).max(0);
            let q_i = q as i128;
            if q_i.checked_mul(lo)? >= c_hi {
                Some(true)
            } else if q_i.checked_mul(hi)? < c_lo {
                Some(false)
            } else {
                None
            }
        });
        let ok = match fast {
            Some(v) => v,
            None => exact_claim_holds(cert, q)?,
        };
        if !ok {
            // Confirmed exactly by exact_claim_holds (the fast path never
            // reports failure on its own).
            if !exact_claim_holds(cert, q)? {
                let margin = refutation_margin(cert, q)?;
                return Ok(Verdict::Refuted { q, margin });
            }
        }
    }
    Ok(Verdict::Verified)
}

/// Exact check of `q * dist(theta*q, W) >= c` for a single q.
fn exact_claim_holds(cert: &Certificate, q: u64) -> Result<bool> {
    let theta = &cert.theta;
    let p = CirclePoint::orbit(q, theta)?;
    let d_center = circle_distance(&p, &cert.w_final.center, theta)?;
    let dist = d_center.sub_rational(&cert.w_final.radius);
    if dist.sign(theta)? != Ordering::Greater {
        return Ok(false); // inside the closed interval: distance zero
    }
    let lhs = dist * &BigInt::from(q);
    Ok(lhs.sub_rational(&cert.c).sign(theta)? != Ordering::Less)
}

/// Certified rational upper bound of the achieved `q * dist`, strictly below
/// the claimed constant (zero when the point lies inside the interval).
fn refutation_margin(cert: &Certificate, q: u64) -> Result<BigRational> {
    let theta = &cert.theta;
    let p = CirclePoint::orbit(q, theta)?;
    let d_center = circle_distance(&p, &cert.w_final.center, theta)?;
    let dist = d_center.sub_rational(&cert.w_final.radius);
    if dist.sign(theta)? != Ordering::Greater {
        return Ok(BigRational::zero());
    }
    let achieved = dist * &BigInt::from(q);
    let mut bits = 64u32;
    loop {
        let (_, hi) = achieved.enclosure(theta, bits)?;
        if hi < cert.c {
            return Ok(hi);
        }
        bits = bits.saturating_mul(2);
        assert!(bits <= 1 << 22, "margin refinement failed to separate");
    }
}

/// Exact minimum of `q * dist(theta*q, x)` over `1 <= q <= q_max`, with the
/// first minimizing q. The minimum is an exact form (zero iff x is itself an
/// orbit point of the range).
pub fn effective_badness(
    theta: &ThetaSpec,
    x: &CirclePoint,
    q_max: u64,
    scan_cap: u64,
) -> Result<(theta_arith::LinearForm, u64)> {
    effective_badness_range(theta, x, 1, q_max, scan_cap)
}

/// Same minimum over an inclusive sub-range `q_min <= q <= q_max`.
pub fn effective_badness_range(
    theta: &ThetaSpec,
    x: &CirclePoint,
    q_min: u64,
    q_max: u64,
    scan_cap: u64,
) -> Result<(theta_arith::LinearForm, u64)> {
    if q_max > scan_cap {
        return Err(Error::ScanCapExceeded { required: BigInt::from(q_max), cap: scan_cap });
    }
    assert!(q_min >= 1 && q_min <= q_max);
    let ts = ThetaScaled::new(theta)?;
    let (clo, chi) = x.form().enclosure(theta, SCALE_BITS + 16)?;
    let x_scaled = (floor_scaled(&clo), ceil_scaled(&chi));

    let mut best_form: Option<theta_arith::LinearForm> = None;
    let mut best_q = q_min;
    let mut best_hi: i128 = i128::MAX;

    for q in q_min..=q_max {
        let bracket = ts.frac_multiple(q).map(|(flo, fhi)| {
            let d = circle_distance_scaled((flo as i128, fhi as i128), x_scaled);
            let q_i = q as i128;
            (q_i.saturating_mul(d.0), q_i.saturating_mul(d.1))
        });
        if let Some((lo, _)) = bracket {
            if lo > best_hi {
                continue; // certainly not better
            }
        }
        // Exact candidate evaluation.
        let p = CirclePoint::orbit(q, theta)?;
        let d = circle_distance(&p, x, theta)?;
        let value = d * &BigInt::from(q);
        let better = match &best_form {
            None => true,
            Some(b) => value.cmp_form(b, theta)? == Ordering::Less,
        };
        if better {
            if let Some((_, hi)) = bracket {
                best_hi = hi;
            }
            best_form = Some(value);
            best_q = q;
        }
    }
    Ok((best_form.expect("nonempty range"), best_q))
}
