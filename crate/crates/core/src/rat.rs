//! Exact rational scalars.
//!
//! All weights, matrix entries, and mixture coefficients in this crate are
//! arbitrary-precision rationals. `Ratio::new` keeps them reduced with a
//! positive denominator, which is also the canonical printed form
//! (`n` or `n/d`).

use num::bigint::BigInt;
use num::{One, Signed, Zero};

pub type Rat = num::BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// True when `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}
