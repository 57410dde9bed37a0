//! Base-`b` digit algebra: `b`-repdigits and `m`-block repdigits.
//!
//! A `b`-repdigit is an integer greater than `b` whose base-`b` digits are all
//! equal, i.e. `a (b^l - 1) / (b - 1)` with `l >= 2` and `1 <= a <= b - 1`.
//! An `m`-block repdigit is a repdigit in base `10^m`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `a (b^l - 1) / (b - 1)` with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepdigitForm {
    pub a: u64,
    pub b: u64,
    pub ell: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub value: BigUint,
}

impl RepdigitForm {
    pub fn new(a: u64, b: u64, ell: u32) -> Result<Self> {
        let value = repdigit_value(a, b, ell)?;
        Ok(RepdigitForm { a, b, ell, value })
    }
}

/// A value made of `length` copies of one `block_size`-digit decimal block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockForm {
    pub block_size: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub block: BigUint,
    pub length: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub value: BigUint,
}

/// Base-`b` digits of `value`, most significant first. Zero has the single digit 0.
///
/// # Panics
/// If `b < 2`.
pub fn to_base_digits(value: &BigUint, b: u64) -> Vec<u64> {
    assert!(b >= 2, "base must be at least 2");
    if value.is_zero() {
        return vec![0];
    }
    let base = BigUint::from(b);
    let mut digits = Vec::new();
    let mut x = value.clone();
    while !x.is_zero() {
        let (q, r) = x.div_rem(&base);
        digits.push(r.to_u64().unwrap());
        x = q;
    }
    digits.reverse();
    digits
}

/// `(digit, length)` if every base-`base` digit of `value` equals one non-zero digit
/// and `value > base`.
pub fn uniform_digit(value: &BigUint, base: &BigUint) -> Option<(BigUint, u32)> {
    if value <= base {
        return None;
    }
    let (mut x, d) = value.div_rem(base);
    if d.is_zero() {
        return None;
    }
    let mut len = 1u32;
    while !x.is_zero() {
        let (q, r) = x.div_rem(base);
        if r != d {
            return None;
        }
        x = q;
        len += 1;
    }
    Some((d, len))
}

/// `(a, l)` with `l >= 2` if `value` is a `b`-repdigit.
///
/// # Panics
/// If `b < 2`.
pub fn as_repdigit(value: &BigUint, b: u64) -> Option<(u64, u32)> {
    assert!(b >= 2, "base must be at least 2");
    uniform_digit(value, &BigUint::from(b)).map(|(d, l)| (d.to_u64().unwrap(), l))
}

/// `a (b^l - 1) / (b - 1)`.
pub fn repdigit_value(a: u64, b: u64, ell: u32) -> Result<BigUint> {
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    if a == 0 || a >= b {
        return Err(Error::DigitOutOfRange { digit: a, base: b });
    }
    if ell == 0 {
        return Err(Error::Precondition("length must be at least 1".into()));
    }
    let base = BigUint::from(b);
    let repunit = (base.pow(ell) - BigUint::one()) / (b - 1);
    Ok(repunit * a)
}

/// `(block, length)` if `value` is a repdigit in base `10^m`.
pub fn as_block_repdigit(value: &BigUint, m: u32) -> Option<(BigUint, u32)> {
    if m == 0 {
        return None;
    }
    uniform_digit(value, &BigUint::from(10u32).pow(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn digits_examples() {
        assert_eq!(to_base_digits(&big(15), 2), vec![1, 1, 1, 1]);
        assert_eq!(to_base_digits(&big(399), 20), vec![19, 19]);
        assert_eq!(to_base_digits(&big(1), 10), vec![1]);
        assert_eq!(to_base_digits(&big(0), 7), vec![0]);
    }

    #[test]
    fn repdigit_examples() {
        assert_eq!(as_repdigit(&big(88), 10), Some((8, 2)));
        assert_eq!(as_repdigit(&big(399), 10), None);
        assert_eq!(as_repdigit(&big(399), 20), Some((19, 2)));
        assert_eq!(as_repdigit(&big(170), 4), Some((2, 4)));
    }

    #[test]
    fn single_digits_are_not_repdigits() {
        assert_eq!(as_repdigit(&big(5), 10), None);
        assert_eq!(as_repdigit(&big(10), 10), None);
        // 11 > 10 is the smallest base-10 repdigit
        assert_eq!(as_repdigit(&big(11), 10), Some((1, 2)));
        assert_eq!(as_repdigit(&big(0), 10), None);
    }

    #[test]
    fn value_examples() {
        assert_eq!(repdigit_value(3, 6, 3).unwrap(), big(129));
        assert_eq!(repdigit_value(1, 6, 5).unwrap(), big(1555));
        assert_eq!(repdigit_value(5, 10, 1).unwrap(), big(5));
    }

    #[test]
    fn value_rejects_bad_digits() {
        assert_eq!(
            repdigit_value(10, 10, 2),
            Err(Error::DigitOutOfRange { digit: 10, base: 10 })
        );
        assert!(matches!(repdigit_value(0, 10, 2), Err(Error::DigitOutOfRange { .. })));
        assert!(matches!(repdigit_value(1, 1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn block_examples() {
        assert_eq!(as_block_repdigit(&big(88), 1), Some((big(8), 2)));
        assert_eq!(as_block_repdigit(&big(2626), 2), Some((big(26), 2)));
        assert_eq!(as_block_repdigit(&big(129), 1), None);
        // 0505 is not a 4-digit value; 505 in base 100 is [5, 5]
        assert_eq!(as_block_repdigit(&big(505), 2), Some((big(5), 2)));
    }
}
