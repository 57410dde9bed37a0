//! Narayana's cows sequence: `N_0 = 0, N_1 = N_2 = 1, N_n = N_{n-1} + N_{n-3}`.
//!
//! Values always come from the integer recurrence. The closed form
//! `N_n = round(C_alpha * alpha^(n+2))` is only used as a cross-check.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highprec::{AlgebraicConstants, Precision, RealEnclosure};

/// `N_n` together with its index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NarayanaValue {
    pub index: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub value: BigUint,
}

/// Append-only table of `N_0, N_1, ...`; reads are concurrent, growth is serialized.
#[derive(Debug)]
pub struct SequenceCache {
    terms: RwLock<Vec<BigUint>>,
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            terms: RwLock::new(vec![BigUint::from(0u32), BigUint::from(1u32), BigUint::from(1u32)]),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Makes sure `N_0..=N_n` are stored.
    pub fn extend_to(&self, n: usize) {
        if n < self.len() {
            return;
        }
        let mut terms = self.terms.write().unwrap();
        while terms.len() <= n {
            let k = terms.len();
            let next = &terms[k - 1] + &terms[k - 3];
            assert!(
                &next - &terms[k - 1] == terms[k - 3],
                "recurrence check failed at index {k}"
            );
            terms.push(next);
        }
    }

    pub fn get(&self, n: usize) -> BigUint {
        self.extend_to(n);
        self.terms.read().unwrap()[n].clone()
    }

    /// Clones `N_from..=N_to`.
    pub fn range(&self, from: usize, to: usize) -> Vec<NarayanaValue> {
        if from > to {
            return Vec::new();
        }
        self.extend_to(to);
        let terms = self.terms.read().unwrap();
        (from..=to)
            .map(|i| NarayanaValue {
                index: i,
                value: terms[i].clone(),
            })
            .collect()
    }

    /// Runs `f` on a read-only view of `N_0..=N_n`.
    pub fn with_terms<R>(&self, n: usize, f: impl FnOnce(&[BigUint]) -> R) -> R {
        self.extend_to(n);
        let terms = self.terms.read().unwrap();
        f(&terms[..=n])
    }
}

/// Process-wide cache used by [`narayana`].
pub fn global_cache() -> &'static SequenceCache {
    static CACHE: OnceLock<SequenceCache> = OnceLock::new();
    CACHE.get_or_init(SequenceCache::new)
}

/// `N_n`, exactly.
pub fn narayana(n: usize) -> BigUint {
    global_cache().get(n)
}

/// Ceiling for the automatic precision increase in [`narayana_via_binet`].
pub const BINET_MAX_DIGITS: u32 = 20_000;

/// `N_n` recovered as the certified nearest integer to `C_alpha * alpha^(n+2)`.
///
/// Starts at `precision` and raises it until the enclosure rounds
/// unambiguously, up to [`BINET_MAX_DIGITS`].
pub fn narayana_via_binet(n: usize, precision: Precision) -> Result<BigUint> {
    narayana_via_binet_bounded(n, precision, Precision::digits(BINET_MAX_DIGITS))
}

pub fn narayana_via_binet_bounded(n: usize, precision: Precision, max: Precision) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition("the closed form is checked for n >= 1".into()));
    }
    // digits of alpha^(n+2) plus headroom
    let needed = Precision::digits(((n as f64 + 2.0) * 0.166).ceil() as u32 + 10);
    let mut prec = precision
        .max(needed)
        .min(max)
        .max(Precision::digits(Precision::MIN_DIGITS));
    loop {
        let c = AlgebraicConstants::cached(prec)?;
        let approx = binet_approximation(&c, n);
        if approx.width_f64() < 0.5 {
            if let Some(k) = approx.certified_round() {
                return k.to_biguint().ok_or_else(|| {
                    Error::Certification(format!("closed form rounded to a negative value at n={n}"))
                });
            }
        }
        if prec >= max {
            return Err(Error::PrecisionExhausted {
                context: format!("closed form for N_{n}"),
                digits: prec.get(),
            });
        }
        prec = prec.escalate().min(max);
    }
}

/// Enclosure of `C_alpha * alpha^(n+2)`.
pub fn binet_approximation(c: &AlgebraicConstants, n: usize) -> RealEnclosure {
    c.c_alpha.mul(&c.alpha_pow(n as i64 + 2))
}

/// Enclosure of `zeta_n = N_n - C_alpha * alpha^(n+2)`.
pub fn binet_residual(c: &AlgebraicConstants, n: usize) -> RealEnclosure {
    let exact = BigInt::from_biguint(Sign::Plus, narayana(n));
    binet_approximation(c, n).neg().add_int(&exact)
}

/// Enclosures of `alpha^(n-2)` and `alpha^(n-1)`.
pub fn growth_window(c: &AlgebraicConstants, n: usize) -> Result<(RealEnclosure, RealEnclosure)> {
    if n == 0 {
        return Err(Error::Precondition("growth window needs n >= 1".into()));
    }
    Ok((c.alpha_pow(n as i64 - 2), c.alpha_pow(n as i64 - 1)))
}

/// Whether `alpha^(n-2) <= N_n` and `N_n <= alpha^(n-1)` hold; `None` if undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthCheck {
    pub n: usize,
    pub lower_holds: Option<bool>,
    pub upper_holds: Option<bool>,
}

pub fn check_growth_window(c: &AlgebraicConstants, n: usize) -> Result<GrowthCheck> {
    let (lower, upper) = growth_window(c, n)?;
    let value = BigInt::from_biguint(Sign::Plus, narayana(n));
    let one = BigInt::from(1);
    let lower_holds = decide_le(&lower, &value, &one);
    let upper_holds = decide_ge(&upper, &value, &one);
    Ok(GrowthCheck {
        n,
        lower_holds,
        upper_holds,
    })
}

/// `x <= num/den` decided from the enclosure.
pub(crate) fn decide_le(x: &RealEnclosure, num: &BigInt, den: &BigInt) -> Option<bool> {
    use std::cmp::Ordering::*;
    match (x.upper_cmp_ratio(num, den), x.lower_cmp_ratio(num, den)) {
        (Less | Equal, _) => Some(true),
        (_, Greater) => Some(false),
        _ => None,
    }
}

pub(crate) fn decide_ge(x: &RealEnclosure, num: &BigInt, den: &BigInt) -> Option<bool> {
    use std::cmp::Ordering::*;
    match (x.lower_cmp_ratio(num, den), x.upper_cmp_ratio(num, den)) {
        (Greater | Equal, _) => Some(true),
        (_, Less) => Some(false),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_terms() {
        let want = [0u32, 1, 1, 1, 2, 3, 4, 6, 9, 13, 19];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(narayana(n), BigUint::from(*w));
        }
        assert_eq!(narayana(14), BigUint::from(88u32));
        assert_eq!(narayana(15), BigUint::from(129u32));
    }

    #[test]
    fn cache_range_is_contiguous() {
        let cache = SequenceCache::new();
        let r = cache.range(3, 7);
        assert_eq!(r.iter().map(|v| v.index).collect::<Vec<_>>(), vec![3, 4, 5, 6, 7]);
        assert!(cache.range(5, 4).is_empty());
        assert_eq!(cache.len(), 8);
    }

    #[test]
    fn binet_small_indices() {
        let p = Precision::DEFAULT;
        assert_eq!(narayana_via_binet(1, p).unwrap(), BigUint::from(1u32));
        assert_eq!(narayana_via_binet(14, p).unwrap(), BigUint::from(88u32));
        assert!(narayana_via_binet(0, p).is_err());
    }

    #[test]
    fn binet_widens_precision_for_large_n() {
        // alpha^2002 has ~333 digits, beyond the 200-digit default
        let n = 2000;
        assert_eq!(narayana_via_binet(n, Precision::DEFAULT).unwrap(), narayana(n));
    }

    #[test]
    fn binet_reports_exhaustion() {
        let err = narayana_via_binet_bounded(3000, Precision::digits(30), Precision::digits(40)).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { .. }));
    }
}
