//! Continued-fraction convergents certified from both ends of an enclosure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::enclosure::RealEnclosure;
use crate::error::{Error, Result};

/// Convergents emitted after the first one whose denominator exceeds the target.
pub const EXTRA_CONVERGENTS: usize = 10;

/// A convergent `p/q` of a simple continued fraction, `index` counting from `a_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    pub index: usize,
}

struct Euclid {
    num: BigInt,
    den: BigInt,
}

impl Euclid {
    fn quotient(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    /// Advances past `a`; returns false once the expansion has terminated.
    fn advance(&mut self, a: &BigInt) -> bool {
        let rem = &self.num - a * &self.den;
        if rem.is_zero() {
            return false;
        }
        self.num = std::mem::replace(&mut self.den, rem);
        true
    }
}

/// Convergents of the real number enclosed by `x`.
///
/// A partial quotient is emitted only when the expansions of both endpoints
/// agree on it, so every returned convergent belongs to every real inside the
/// enclosure. Expansion continues to the first convergent with `q > q_min`
/// and then up to [`EXTRA_CONVERGENTS`] more. A point enclosure of a rational
/// yields its finite expansion.
pub fn continued_fraction_convergents(x: &RealEnclosure, q_min: &BigInt) -> Result<Vec<Convergent>> {
    let den = x.denominator();
    let mut lo = Euclid {
        num: x.lower_numer().clone(),
        den: den.clone(),
    };
    let mut hi = Euclid {
        num: x.upper_numer().clone(),
        den,
    };
    // p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    let mut out: Vec<Convergent> = Vec::new();
    let mut passed_at: Option<usize> = None;
    let finished_rational = loop {
        let a = lo.quotient();
        if a != hi.quotient() {
            break false;
        }
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            index: out.len(),
        });
        if passed_at.is_none() && &q > q_min {
            passed_at = Some(out.len() - 1);
        }
        if let Some(i) = passed_at {
            if out.len() > i + EXTRA_CONVERGENTS {
                return Ok(out);
            }
        }
        let more_lo = lo.advance(&a);
        let more_hi = hi.advance(&a);
        match (more_lo, more_hi) {
            (true, true) => continue,
            (false, false) => break true,
            _ => break false,
        }
    };
    if passed_at.is_some() || (finished_rational && x.is_point()) {
        Ok(out)
    } else {
        Err(Error::PrecisionExhausted {
            context: format!(
                "continued fraction diverged after {} certified convergents before q > {q_min}",
                out.len()
            ),
            digits: x.precision().get(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::Precision;

    fn pairs(cs: &[Convergent]) -> Vec<(i64, i64)> {
        cs.iter()
            .map(|c| (i64::try_from(&c.p).unwrap(), i64::try_from(&c.q).unwrap()))
            .collect()
    }

    #[test]
    fn rational_point_gives_finite_expansion() {
        let x = RealEnclosure::from_ratio(7, 3, Precision::digits(30)).unwrap();
        let cs = continued_fraction_convergents(&x, &BigInt::one()).unwrap();
        assert_eq!(pairs(&cs), vec![(2, 1), (7, 3)]);
    }

    #[test]
    fn golden_ratio_gives_fibonacci_ratios() {
        let p = Precision::digits(40);
        let five = RealEnclosure::from_integer(5, p);
        let phi = five.sqrt().unwrap().add_int(&BigInt::one()).div_int(&BigInt::from(2)).unwrap();
        let cs = continued_fraction_convergents(&phi, &BigInt::from(10)).unwrap();
        assert_eq!(
            &pairs(&cs)[..6],
            &[(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8)]
        );
        // first with q > 10 is 21/13, then ten more
        assert_eq!(pairs(&cs)[6], (21, 13));
        assert_eq!(cs.len(), 7 + EXTRA_CONVERGENTS);
    }

    #[test]
    fn wide_enclosure_exhausts_precision() {
        let x = RealEnclosure::from_bounds(BigInt::from(141), BigInt::from(142), 100, Precision::digits(30)).unwrap();
        let err = continued_fraction_convergents(&x, &BigInt::from(1000)).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { .. }));
    }

    #[test]
    fn negative_numbers_use_floor_quotients() {
        let x = RealEnclosure::from_ratio(-7, 3, Precision::digits(30)).unwrap();
        let cs = continued_fraction_convergents(&x, &BigInt::one()).unwrap();
        // -7/3 = [-3; 1, 2]
        assert_eq!(pairs(&cs), vec![(-3, 1), (-2, 1), (-7, 3)]);
    }
}
