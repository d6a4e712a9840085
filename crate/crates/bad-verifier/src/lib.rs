//! Independent brute-force oracles: certificate checking for finished games,
//! effective-badness computation, and the continued-fraction fact batteries.
//!
//! This crate deliberately depends only on `theta-arith` and `cont-frac`; it
//! shares no code path with the playing strategy's inequality bookkeeping, so
//! a verified certificate is evidence, not an echo.

mod battery;
mod certificate;
pub mod json;

pub use battery::{run_fact_battery, BatteryEntry, BatteryReport};
pub use certificate::{check_certificate, effective_badness, effective_badness_range, Certificate, Verdict};

use num::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] theta_arith::Error),

    #[error("scan needs q up to {required} but the cap is {cap}")]
    ScanCapExceeded { required: BigInt, cap: u64 },

    #[error("{0}")]
    Malformed(String),
}

impl From<cont_frac::Error> for Error {
    fn from(e: cont_frac::Error) -> Self {
        match e {
            cont_frac::Error::Arith(a) => Error::Arith(a),
            cont_frac::Error::ScanCapExceeded { required, cap } => {
                Error::ScanCapExceeded { required, cap }
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
