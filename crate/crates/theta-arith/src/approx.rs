//! Fixed-point enclosure layer for the scan-heavy callers (orbit enumeration,
//! certificate checks). Values in [0, ~2) are held as u128 multiples of
//! 2^-96, always rounded outward, so a decided comparison is a proof; anything
//! ambiguous must be re-decided on the exact path.

use num::{BigInt, BigRational, ToPrimitive};

use crate::{Result, ThetaSpec};

/// Scale exponent: values are integer multiples of 2^-SCALE_BITS.
pub const SCALE_BITS: u32 = 96;

fn scale_unit() -> BigInt {
    BigInt::from(1u8) << SCALE_BITS
}

/// Outward-rounded enclosure of theta, `lo/2^96 <= theta <= hi/2^96`.
#[derive(Clone, Copy, Debug)]
pub struct ThetaScaled {
    pub lo: u128,
    pub hi: u128,
}

impl ThetaScaled {
    pub fn new(theta: &ThetaSpec) -> Result<ThetaScaled> {
        let (lo, hi) = theta.enclosure(SCALE_BITS + 16)?;
        Ok(ThetaScaled {
            lo: floor_scaled(&lo).max(0) as u128,
            hi: ceil_scaled(&hi).max(0) as u128,
        })
    }

    /// Enclosure of `frac(q * theta)` at the same scale, or `None` when the
    /// bracket straddles an integer (the caller must go exact).
    pub fn frac_multiple(&self, q: u64) -> Option<(u128, u128)> {
        debug_assert!(q < (1 << 40), "scan multiples stay far below the scale");
        let q = q as u128;
        let a = q.checked_mul(self.lo)?;
        let b = q.checked_mul(self.hi)?;
        let (ka, kb) = (a >> SCALE_BITS, b >> SCALE_BITS);
        if ka != kb {
            return None;
        }
        let mask: u128 = (1u128 << SCALE_BITS) - 1;
        Some((a & mask, (b & mask) + 1))
    }
}

/// `floor(r * 2^96)` as i128 (values used here are small).
pub fn floor_scaled(r: &BigRational) -> i128 {
    let v = (r * BigRational::from(scale_unit())).floor().to_integer();
    v.to_i128().expect("scaled value fits i128")
}

/// `ceil(r * 2^96)` as i128.
pub fn ceil_scaled(r: &BigRational) -> i128 {
    let v = (r * BigRational::from(scale_unit())).ceil().to_integer();
    v.to_i128().expect("scaled value fits i128")
}

/// One circle unit at scale (i.e. the number 1).
pub const fn one_scaled() -> i128 {
    1i128 << SCALE_BITS
}

/// Enclosure of the circular distance between a point enclosed by
/// `[x_lo, x_hi]` and one enclosed by `[y_lo, y_hi]`, all in [0, 1) scaled.
/// Conservative: the result brackets the true distance.
pub fn circle_distance_scaled(
    (x_lo, x_hi): (i128, i128),
    (y_lo, y_hi): (i128, i128),
) -> (i128, i128) {
    // Raw signed difference bracket.
    let d_lo = x_lo - y_hi;
    let d_hi = x_hi - y_lo;
    // Fold |d| mod 1 into [0, 1/2] three candidate ways: d, d+1, d-1.
    let one = one_scaled();
    let mut best_lo = i128::MAX;
    let mut best_hi = i128::MAX;
    for shift in [-one, 0, one] {
        let lo = d_lo + shift;
        let hi = d_hi + shift;
        // |.| bracket
        let (alo, ahi) = if lo >= 0 {
            (lo, hi)
        } else if hi <= 0 {
            (-hi, -lo)
        } else {
            (0, (-lo).max(hi))
        };
        // circle distance candidate only meaningful when within [0, 1]
        if alo > one {
            continue;
        }
        // min(a, 1-a) bracket; the true distance is at most every
        // candidate's upper bound, so the mins combine on both sides.
        let mlo = alo.min(one - ahi.min(one)).max(0);
        let mhi = ahi.min(one - alo).max(0);
        best_lo = best_lo.min(mlo);
        best_hi = best_hi.min(mhi);
    }
    if best_lo > best_hi {
        (0, one / 2)
    } else {
        (best_lo.max(0), best_hi.min(one / 2))
    }
}
