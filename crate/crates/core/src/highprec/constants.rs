//! The dominant root of `x^3 - x^2 - 1` and the constants derived from it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::enclosure::{Precision, RealEnclosure};
use crate::error::{Error, Result};

/// Certified enclosures of `alpha`, `log alpha`, `C_alpha = 1/(alpha^3 + 2)` and `|beta|`.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicConstants {
    pub alpha: RealEnclosure,
    pub log_alpha: RealEnclosure,
    pub c_alpha: RealEnclosure,
    /// Modulus of the two complex roots; `alpha * |beta|^2 = 1`.
    pub beta_abs: RealEnclosure,
    pub precision: Precision,
}

const NEWTON_MAX_ITER: usize = 64;

/// `x^3 - x^2 - 1` at `x = num / 2^bits`, scaled by `2^(3 bits)`.
fn char_poly_scaled(num: &BigInt, bits: u32) -> BigInt {
    let one = BigInt::from(1) << (bits as usize);
    num * num * num - num * num * &one - &one * &one * &one
}

/// Newton iteration from 1.5 in fixed point, then a sign-change certificate.
fn certify_alpha(precision: Precision) -> Result<RealEnclosure> {
    let bits = precision.bits();
    let scale = BigInt::from(1) << (bits as usize);
    let mut x = BigInt::from(3) << (bits as usize - 1);
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        // x <- x - f(x)/f'(x), all over 2^bits
        let f = char_poly_scaled(&x, bits); // / 2^(3 bits)
        let fp = BigInt::from(3) * &x * &x - BigInt::from(2) * &x * &scale; // / 2^(2 bits)
        if fp.is_zero() {
            return Err(Error::NonConvergence("Newton derivative vanished".into()));
        }
        let step = f / fp; // / 2^bits
        x -= &step;
        if step.abs() <= BigInt::from(1) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "Newton iteration for alpha at {precision}"
        )));
    }
    // widen until the polynomial changes sign across the enclosure
    let mut radius = BigInt::from(4);
    for _ in 0..16 {
        let lo = &x - &radius;
        let hi = &x + &radius;
        if char_poly_scaled(&lo, bits).is_negative() && char_poly_scaled(&hi, bits).is_positive() {
            return RealEnclosure::from_bounds(lo, hi, scale, precision);
        }
        radius <<= 4;
    }
    Err(Error::Certification("no sign change of x^3 - x^2 - 1 around the Newton iterate".into()))
}

/// Computes all constants at `precision` decimal digits.
pub fn compute_constants(precision: Precision) -> Result<AlgebraicConstants> {
    if precision.get() < Precision::MIN_DIGITS {
        return Err(Error::Precondition(format!(
            "precision must be at least {} digits, got {}",
            Precision::MIN_DIGITS,
            precision.get()
        )));
    }
    let alpha = certify_alpha(precision)?;
    let log_alpha = alpha.ln()?;
    let two = RealEnclosure::from_integer(2, precision);
    let c_alpha = alpha.powi(3)?.add(&two).recip()?;
    let beta_abs = alpha.recip()?.sqrt()?;
    Ok(AlgebraicConstants {
        alpha,
        log_alpha,
        c_alpha,
        beta_abs,
        precision,
    })
}

impl AlgebraicConstants {
    /// Shared, lazily computed constants for `precision`.
    pub fn cached(precision: Precision) -> Result<Arc<AlgebraicConstants>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<AlgebraicConstants>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().unwrap().get(&precision.get()) {
            return Ok(c.clone());
        }
        let c = Arc::new(compute_constants(precision)?);
        cache.lock().unwrap().insert(precision.get(), c.clone());
        Ok(c)
    }

    /// `alpha^k` for any integer `k`.
    pub fn alpha_pow(&self, k: i64) -> RealEnclosure {
        self.alpha.powi(k).expect("alpha is bounded away from 0")
    }

    /// Enclosure of `alpha^3 - alpha^2 - 1`; must contain 0.
    pub fn char_poly_residual(&self) -> RealEnclosure {
        let a = &self.alpha;
        a.powi(3)
            .unwrap()
            .sub(&a.square())
            .sub(&RealEnclosure::from_integer(1, self.precision))
    }

    /// Enclosure of `31 C^3 - 31 C^2 + 10 C - 1` at `C = C_alpha`; must contain 0.
    pub fn c_alpha_min_poly_residual(&self) -> RealEnclosure {
        let c = &self.c_alpha;
        let p = self.precision;
        let k = |v: i64| BigInt::from(v);
        c.powi(3)
            .unwrap()
            .mul_int(&k(31))
            .sub(&c.square().mul_int(&k(31)))
            .add(&c.mul_int(&k(10)))
            .sub(&RealEnclosure::from_integer(1, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert!(matches!(
            compute_constants(Precision::digits(10)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn alpha_is_tight_and_certified() {
        let c = compute_constants(Precision::digits(30)).unwrap();
        assert!(c.alpha.width_f64() < 1e-30);
        assert!(c.char_poly_residual().contains_zero());
        assert!(c.c_alpha_min_poly_residual().contains_zero());
        assert!(c.beta_abs.upper_f64() < 1.0);
    }

    #[test]
    fn cached_returns_same_instance() {
        let a = AlgebraicConstants::cached(Precision::digits(40)).unwrap();
        let b = AlgebraicConstants::cached(Precision::digits(40)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
