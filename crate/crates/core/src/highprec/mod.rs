//! Certified arbitrary-precision real arithmetic.
//!
//! All real-valued quantities in the pipeline (`alpha`, `log alpha`,
//! `log b`, `C_alpha`, the reduction multipliers and shifts, epsilon) are
//! [`RealEnclosure`]s. Operations never silently lose certification: when a
//! result cannot be decided at the current precision they return
//! [`Error::PrecisionExhausted`](crate::Error::PrecisionExhausted) or
//! [`Error::Ambiguous`](crate::Error::Ambiguous).

mod constants;
mod contfrac;
mod enclosure;

use num_bigint::BigUint;

pub use constants::{compute_constants, AlgebraicConstants};
pub use contfrac::{continued_fraction_convergents, Convergent, EXTRA_CONVERGENTS};
pub use enclosure::{ln_integer, Precision, RealEnclosure, GUARD_BITS};
pub(crate) use enclosure::ratio_ln_f64;

use crate::error::Result;

/// Argument to [`log_enclosure`].
pub enum LogArg<'a> {
    Real(&'a RealEnclosure),
    Integer(&'a BigUint),
}

/// Certified natural logarithm of a positive enclosure or integer.
pub fn log_enclosure(x: LogArg<'_>, precision: Precision) -> Result<RealEnclosure> {
    match x {
        LogArg::Real(r) => r.with_precision(precision.max(r.precision())).ln(),
        LogArg::Integer(n) => ln_integer(n, precision),
    }
}

/// Enclosure of the distance from `x` to the nearest integer.
pub fn nearest_int_distance(x: &RealEnclosure) -> Result<RealEnclosure> {
    x.nearest_int_distance()
}
