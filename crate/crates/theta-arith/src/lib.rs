//! Exact arithmetic over numbers of the form `a*theta + b`, where `theta` is
//! an irrational in (0,1) presented by its continued-fraction quotient stream,
//! `a` is an arbitrary-precision integer and `b` an exact rational.
//!
//! Every comparison is decided exactly by walking the convergents of `theta`;
//! there is no floating point anywhere. The [`approx`] module provides a
//! fixed-point *enclosure* layer used as a fast pre-filter by the scan-heavy
//! callers; enclosures are outward-rounded and therefore sound, and every
//! ambiguous comparison falls back to the exact path.

mod circle;
mod error;
mod form;
mod theta;

pub mod approx;

pub use circle::{
    circle_distance, gap_complement, interval_contains, interval_gap_complement, offset_from,
    reduce_mod_one, CircleInterval, CirclePoint, GapArc, ObstacleArc,
};
pub use error::Error;
pub use form::{sign_of, LinearForm};
pub use theta::ThetaSpec;

pub type Result<T> = std::result::Result<T, Error>;
