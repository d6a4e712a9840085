use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Result, ThetaSpec};

/// The exact real number `a*theta + b`. Two forms denote the same real iff the
/// pairs `(a, b)` coincide (theta is irrational), so `Eq` is structural.
///
/// Points and ball centers always carry an integer theta coefficient; the
/// coefficient is rational here so that derived quantities such as the dodge
/// radii `(alpha*beta)*Delta/4` stay inside the closure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub theta_coeff: BigRational,
    pub constant: BigRational,
}

impl LinearForm {
    pub fn new(theta_coeff: impl Into<BigInt>, constant: BigRational) -> Self {
        LinearForm { theta_coeff: BigRational::from(theta_coeff.into()), constant }
    }

    pub fn new_rational(theta_coeff: BigRational, constant: BigRational) -> Self {
        LinearForm { theta_coeff, constant }
    }

    pub fn zero() -> Self {
        LinearForm { theta_coeff: BigRational::zero(), constant: BigRational::zero() }
    }

    pub fn from_rational(b: BigRational) -> Self {
        LinearForm { theta_coeff: BigRational::zero(), constant: b }
    }

    pub fn from_integer_rational(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `q*theta` for an integer multiple of theta.
    pub fn theta_multiple(q: impl Into<BigInt>) -> Self {
        LinearForm { theta_coeff: BigRational::from(q.into()), constant: BigRational::zero() }
    }

    /// The theta coefficient when it is an integer (true for all points and
    /// ball centers that appear in transcripts).
    pub fn integer_theta_coeff(&self) -> Option<BigInt> {
        self.theta_coeff.is_integer().then(|| self.theta_coeff.to_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.theta_coeff.is_zero()
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        LinearForm { theta_coeff: &self.theta_coeff * by, constant: &self.constant * by }
    }

    /// Sign of `a*theta + b`, decided exactly by convergent bracketing.
    pub fn sign(&self, theta: &ThetaSpec) -> Result<Ordering> {
        sign_of(self, theta)
    }

    pub fn cmp_form(&self, other: &LinearForm, theta: &ThetaSpec) -> Result<Ordering> {
        (self.clone() - other.clone()).sign(theta)
    }

    /// Rational enclosure `(lo, hi)` of the value, via a theta enclosure of
    /// width `2^-bits` (or the deepest available for finite streams).
    pub fn enclosure(&self, theta: &ThetaSpec, bits: u32) -> Result<(BigRational, BigRational)> {
        if self.theta_coeff.is_zero() {
            return Ok((self.constant.clone(), self.constant.clone()));
        }
        let (lo, hi) = theta.enclosure(bits)?;
        let a = &self.theta_coeff;
        let (x, y) = (a * lo + &self.constant, a * hi + &self.constant);
        if x <= y {
            Ok((x, y))
        } else {
            Ok((y, x))
        }
    }
}

/// Sign of `f = a*theta + b` in {-1, 0, +1} (as an `Ordering` against zero).
///
/// For `a = 0` this is the sign of `b`. Otherwise the comparison
/// `theta ? -b/a` is decided by generating convergents until the open
/// interval between consecutive convergents excludes `-b/a`; if `-b/a` is
/// itself a convergent, the side follows from the convergent's parity.
/// Returns `Equal` only for the zero form.
pub fn sign_of(f: &LinearForm, theta: &ThetaSpec) -> Result<Ordering> {
    if f.theta_coeff.is_zero() {
        return Ok(f.constant.cmp(&BigRational::zero()));
    }
    let a_sign = if f.theta_coeff.is_positive() { Ordering::Greater } else { Ordering::Less };
    let target = -&f.constant / &f.theta_coeff;
    // theta is in (0, 1): targets outside decide immediately.
    if target <= BigRational::zero() {
        return Ok(a_sign); // theta > target
    }
    if target >= BigRational::one() {
        return Ok(a_sign.reverse());
    }
    let mut i = 1usize;
    loop {
        let (pi, qi) = theta.convergent_pair(i)?;
        let ci = BigRational::new(pi, qi);
        if ci == target {
            // theta sits above even-index convergents, below odd-index ones.
            let theta_above = i % 2 == 0;
            return Ok(if theta_above { a_sign } else { a_sign.reverse() });
        }
        let (pj, qj) = theta.convergent_pair(i + 1)?;
        let cj = BigRational::new(pj, qj);
        let (lo, hi) = if ci < cj { (ci, cj) } else { (cj, ci) };
        if target < lo {
            return Ok(a_sign);
        }
        if target > hi {
            return Ok(a_sign.reverse());
        }
        i += 1;
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        LinearForm {
            theta_coeff: self.theta_coeff + rhs.theta_coeff,
            constant: self.constant + rhs.constant,
        }
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        LinearForm {
            theta_coeff: self.theta_coeff - rhs.theta_coeff,
            constant: self.constant - rhs.constant,
        }
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm { theta_coeff: -self.theta_coeff, constant: -self.constant }
    }
}

impl Mul<&BigInt> for LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: &BigInt) -> LinearForm {
        let r = BigRational::from(rhs.clone());
        LinearForm { theta_coeff: self.theta_coeff * &r, constant: self.constant * &r }
    }
}

impl LinearForm {
    pub fn add_rational(&self, r: &BigRational) -> LinearForm {
        LinearForm { theta_coeff: self.theta_coeff.clone(), constant: &self.constant + r }
    }

    pub fn sub_rational(&self, r: &BigRational) -> LinearForm {
        LinearForm { theta_coeff: self.theta_coeff.clone(), constant: &self.constant - r }
    }

    pub fn mul_rational(&self, r: &BigRational) -> LinearForm {
        self.scale(r)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*theta + {}", self.theta_coeff, self.constant)
    }
}
