use std::cmp::Ordering;

use num::{BigInt, BigRational, One, ToPrimitive};

use cont_frac::{convergent, delta};
use theta_arith::approx::{ceil_scaled, floor_scaled, ThetaScaled, SCALE_BITS};
use theta_arith::{circle_distance, CirclePoint, LinearForm, ThetaSpec};

use crate::Result;

#[derive(Debug, Clone)]
pub struct BatteryEntry {
    pub fact: String,
    pub scope: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct BatteryReport {
    pub theta: String,
    pub entries: Vec<BatteryEntry>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

fn push(entries: &mut Vec<BatteryEntry>, fact: &str, scope: String, pass: bool, detail: String) {
    entries.push(BatteryEntry { fact: fact.into(), scope, pass, detail });
}

/// Exact circle norm `min over p of |theta*d - p|` for a positive integer d.
fn orbit_norm(theta: &ThetaSpec, d: u64) -> Result<LinearForm> {
    let p = CirclePoint::orbit(d, theta)?;
    Ok(circle_distance(&p, &CirclePoint::zero(), theta)?)
}

/// Scaled norm brackets for d in [1, len]; `None` entries fell across an
/// integer boundary and must be handled exactly.
fn norm_brackets(theta: &ThetaSpec, len: u64) -> Result<Vec<Option<(i128, i128)>>> {
    let ts = ThetaScaled::new(theta)?;
    let one = theta_arith::approx::one_scaled();
    let mut out = Vec::with_capacity(len as usize);
    for d in 1..=len {
        out.push(ts.frac_multiple(d).map(|(lo, hi)| {
            let (lo, hi) = (lo as i128, hi as i128);
            // norm = min(frac, 1 - frac), bracketed outward
            let nlo = lo.min(one - hi).max(0);
            let nhi = hi.min(one - lo);
            (nlo, nhi)
        }));
    }
    Ok(out)
}

/// The verifier-side test batteries for the classical facts the proof leans
/// on. Every failure is a build-blocking defect, not an input condition.
///
/// Index ranges clamp to the quotient stream depth and to `scan_cap`; each
/// entry's scope records what was actually scanned.
pub fn run_fact_battery(theta: &ThetaSpec, depth: usize, scan_cap: u64) -> Result<BatteryReport> {
    let mut entries = Vec::new();

    // Fact: 1/2 < q_i * Delta_{i-1} <= 1 (strict on both sides for
    // irrational theta), for 1 <= i <= depth.
    {
        let mut checked = 0usize;
        let mut ok = true;
        let mut detail = String::new();
        for i in 1..=depth {
            let (c, d) = match (convergent(theta, i), delta(theta, i - 1)) {
                (Ok(c), Ok(d)) => (c, d),
                _ => break, // stream end
            };
            let prod = d.value * &c.q;
            let above_half = prod
                .sub_rational(&BigRational::new(1.into(), 2.into()))
                .sign(theta)?
                == Ordering::Greater;
            let at_most_one =
                prod.sub_rational(&BigRational::one()).sign(theta)? == Ordering::Less;
            if !(above_half && at_most_one) {
                ok = false;
                detail = format!("fails at i={i}");
                break;
            }
            checked = i;
        }
        push(
            &mut entries,
            "convergent_reciprocal_bounds",
            format!("i<=({checked})"),
            ok && checked > 0,
            if ok { format!("checked i=1..{checked}") } else { detail },
        );
    }

    // Fact: pairwise spacing of {theta*j : 0 <= j < q_i} at scale
    // Delta_{i-1}, with equality attained; exhaustive over differences
    // (the norm of theta*k - theta*j depends only on k - j).
    {
        let limit = 5000u64.min(scan_cap);
        let mut max_qi = 0u64;
        let mut indices = Vec::new();
        for i in 1..200usize {
            match convergent(theta, i) {
                Ok(c) => match c.q.to_u64() {
                    Some(q) if q <= limit => {
                        indices.push((i, q));
                        max_qi = max_qi.max(q);
                    }
                    _ => break,
                },
                Err(_) => break,
            }
        }
        let mut ok = true;
        let mut detail = String::new();
        if max_qi >= 2 {
            let brackets = norm_brackets(theta, max_qi - 1)?;
            for &(i, qi) in &indices {
                if qi < 2 {
                    continue; // no pairs below q_i
                }
                let di = delta(theta, i - 1)?;
                let (dlo, dhi) = {
                    let (lo, hi) = di.value.enclosure(theta, SCALE_BITS + 16)?;
                    (floor_scaled(&lo), ceil_scaled(&hi))
                };
                let mut equality_seen = false;
                for d in 1..qi {
                    let decided = match brackets[(d - 1) as usize] {
                        Some((nlo, nhi)) => {
                            if nlo > dhi {
                                Some(true) // clearly above Delta
                            } else if nhi < dlo {
                                Some(false) // clearly below: violation
                            } else {
                                None
                            }
                        }
                        None => None,
                    };
                    let verdict = match decided {
                        Some(v) => v,
                        None => {
                            let norm = orbit_norm(theta, d)?;
                            if norm == di.value {
                                equality_seen = true;
                                true
                            } else {
                                norm.cmp_form(&di.value, theta)? == Ordering::Greater
                            }
                        }
                    };
                    if !verdict {
                        ok = false;
                        detail = format!("spacing fails at i={i}, difference {d}");
                        break;
                    }
                }
                if !ok {
                    break;
                }
                if !equality_seen {
                    ok = false;
                    detail = format!("equality not attained at i={i}");
                    break;
                }
            }
        }
        push(
            &mut entries,
            "pairwise_spacing",
            format!("q_i<={}", max_qi),
            ok,
            if ok { format!("{} indices", indices.len()) } else { detail },
        );
    }

    // Fact: min over 1 <= q < q_{i+1} of the circle norm equals Delta_i.
    {
        let limit = 5000u64.min(scan_cap);
        let mut ok = true;
        let mut detail = String::new();
        let mut scanned = 0usize;
        for i in 0..200usize {
            let q_next = match convergent(theta, i + 1) {
                Ok(c) => match c.q.to_u64() {
                    Some(q) if q <= limit => q,
                    _ => break,
                },
                Err(_) => break,
            };
            if q_next < 2 {
                continue; // empty range (a_1 = 1 at i = 0)
            }
            let di = delta(theta, i)?;
            // the minimum must be attained at q_i with value Delta_i
            let qi = convergent(theta, i)?.q.to_u64().unwrap();
            let at_conv = orbit_norm(theta, qi)?;
            if at_conv != di.value {
                ok = false;
                detail = format!("norm at q_{i} differs from Delta_{i}");
                break;
            }
            for q in 1..q_next {
                let norm = orbit_norm(theta, q)?;
                if norm.cmp_form(&di.value, theta)? == Ordering::Less {
                    ok = false;
                    detail = format!("norm below Delta_{i} at q={q}");
                    break;
                }
            }
            if !ok {
                break;
            }
            scanned = i + 1;
        }
        push(
            &mut entries,
            "best_approximation",
            format!("i<{scanned}"),
            ok,
            if ok { format!("q_(i+1)<={limit}") } else { detail },
        );
    }

    // Identity: Delta_{i-1} = a_{i+1} Delta_i + Delta_{i+1}, structural.
    {
        let mut ok = true;
        let mut checked = 0usize;
        let mut detail = String::new();
        for i in 1..=depth {
            let parts = (
                theta.quotient(i + 1),
                delta(theta, i - 1),
                delta(theta, i),
                delta(theta, i + 1),
            );
            let (a, dm1, d0, d1) = match parts {
                (Ok(a), Ok(x), Ok(y), Ok(z)) => (BigInt::from(a), x, y, z),
                _ => break,
            };
            if dm1.value != d0.value * &a + d1.value {
                ok = false;
                detail = format!("recurrence fails at i={i}");
                break;
            }
            checked = i;
        }
        push(
            &mut entries,
            "delta_recurrence",
            format!("i<=({checked})"),
            ok && checked > 0,
            if ok { String::new() } else { detail },
        );
    }

    // Multiplicative law (generation lower bound): for q in [q_{i+1}, q_{i+2})
    // whose distance to every theta*p of generations <= i (including the
    // integer point 0) is at least r*Delta_i, conclude q >= (r/2) q_{i+2}.
    // Cross-checked through the decomposition q = n*q_{i+1} + s.
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut covered = Vec::new();
        for i in 1..=12usize {
            let q1 = match convergent(theta, i + 1).map(|c| c.q.to_u64()) {
                Ok(Some(q)) => q,
                _ => break,
            };
            let q2 = match convergent(theta, i + 2).map(|c| c.q.to_u64()) {
                Ok(Some(q)) if q <= scan_cap => q,
                _ => break,
            };
            let di = delta(theta, i)?;
            let brackets = norm_brackets(theta, q2 - 1)?;
            for r_den in [4u64, 8, 16] {
                let r = BigRational::new(1.into(), r_den.into());
                let r_delta = di.value.mul_rational(&r);
                let (tlo, thi) = {
                    let (lo, hi) = r_delta.enclosure(theta, SCALE_BITS + 16)?;
                    (floor_scaled(&lo), ceil_scaled(&hi))
                };
                // bad set: differences with norm strictly below r*Delta_i
                let mut bad: Vec<u64> = Vec::new();
                for d in 1..q2 {
                    let is_bad = match brackets[(d - 1) as usize] {
                        Some((_, nhi)) if nhi < tlo => true,
                        Some((nlo, _)) if nlo > thi => false,
                        _ => {
                            let norm = orbit_norm(theta, d)?;
                            norm.cmp_form(&r_delta, theta)? == Ordering::Less
                        }
                    };
                    if is_bad {
                        bad.push(d);
                    }
                }
                // conclusion threshold: q >= (r/2) q_{i+2}  <=>  2 r_den q >= q_{i+2}
                let concl = |q: u64| 2 * r_den as u128 * q as u128 >= q2 as u128;
                let mut bad_idx = 0usize;
                for q in q1..q2 {
                    // window of differences (q - q_{i+1}, q]
                    while bad_idx < bad.len() && bad[bad_idx] <= q.saturating_sub(q1) {
                        bad_idx += 1;
                    }
                    let hyp = !(bad_idx < bad.len() && bad[bad_idx] <= q);
                    // decomposition route: d' = n*q_{i+1}, the s-obstacle
                    let n = q / q1;
                    let d_prime = n * q1;
                    let hyp_prime = !bad.binary_search(&d_prime).is_ok();
                    if hyp && !hyp_prime {
                        ok = false;
                        detail = format!("hypothesis/decomposition disagree at i={i}, q={q}");
                        break;
                    }
                    if hyp && !concl(q) {
                        ok = false;
                        detail = format!("law fails at i={i}, r=1/{r_den}, q={q}");
                        break;
                    }
                    if hyp_prime && !concl(q) {
                        ok = false;
                        detail =
                            format!("decomposition route fails at i={i}, r=1/{r_den}, q={q}");
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok {
                break;
            }
            covered.push(i);
        }
        push(
            &mut entries,
            "multiplicative_law",
            format!("i in {:?}, r in {{1/4,1/8,1/16}}", covered),
            ok && !covered.is_empty(),
            if ok { format!("{} indices", covered.len()) } else { detail },
        );
    }

    Ok(BatteryReport { theta: theta.to_string(), entries })
}
