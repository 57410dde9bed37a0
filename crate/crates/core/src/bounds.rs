//! Heights, Matveev's lower bound and the chain of inequalities that ends in
//! the absolute bound `n < M_b = 6.5e31 log^5 b`.
//!
//! Every quantity is a [`RealEnclosure`]. The chain is reproduced literally,
//! including its rounded constants (`2e13`, `1e14`, `7.3e26`, `2e27`, `63`,
//! `90`, `6.5e31`); each rounding step is re-checked against the exact value it
//! replaces, so a wrong constant surfaces as [`Error::Certification`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highprec::{ln_integer, AlgebraicConstants, Precision, RealEnclosure};

/// Smallest `n` with `1 + log(n+2) <= 2 log n`; checked by [`log_crossover`] and in tests.
pub const LOG_CROSSOVER_N: u64 = 5;

/// Inputs of Matveev's theorem for `Λ = γ_1^{b_1} ⋯ γ_t^{b_t} - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct MatveevParams {
    pub t: u32,
    /// Degree `D` of the number field.
    pub degree: u32,
    /// `B >= max |b_i|`.
    pub coeff_bound: RealEnclosure,
    /// `A_i >= max(D h(γ_i), |log γ_i|, 0.16)`.
    pub heights: Vec<RealEnclosure>,
}

/// Every intermediate of the bound chain for one base.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub b: u32,
    /// Exact Matveev prefactor for `Λ_1` divided by `(1 + log(n+2)) log^2 b`; about 1.86e13.
    pub coeff_lambda1: RealEnclosure,
    /// Rounded coefficient the chain continues with: 2e13.
    pub coeff_lambda1_rounded: f64,
    /// Coefficient in `(n - m) log α < 1e14 log n log^2 b`.
    pub gap_coeff: f64,
    /// Exact coefficient of `log^2 n log^3 b` in the `Λ_2` bound; about 6.82e26.
    pub coeff_lambda2: RealEnclosure,
    pub coeff_lambda2_rounded: f64,
    /// `T = 2e27 log^3 b`.
    pub t_value: RealEnclosure,
    /// `log T`, which the chain bounds by `63 + 3 log log b`.
    pub log_t: RealEnclosure,
    pub log_t_bound: RealEnclosure,
    /// `90 log b`, which dominates `63 + 3 log log b`.
    pub ninety_log_b: RealEnclosure,
    /// `4 T log^2 T`.
    pub chain_value: RealEnclosure,
    /// `(8e27 log^3 b)(90 log b)^2`.
    pub chain_simplified: RealEnclosure,
    /// `M_b = 6.5e31 log^5 b`.
    pub m_b: RealEnclosure,
    /// `ceil(M_b)`, the integer bound handed to the reduction.
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub m_b_ceil: BigUint,
}

fn int(v: i64, p: Precision) -> RealEnclosure {
    RealEnclosure::from_integer(v, p)
}

fn dec(mantissa: i64, exp10: u32, p: Precision) -> RealEnclosure {
    RealEnclosure::from_integer(BigInt::from(mantissa) * BigInt::from(10u32).pow(exp10), p)
}

fn ratio(n: i64, d: i64, p: Precision) -> RealEnclosure {
    RealEnclosure::from_ratio(n, d, p).expect("non-zero denominator")
}

fn ln_u(v: u64, p: Precision) -> RealEnclosure {
    ln_integer(&BigUint::from(v), p).expect("positive argument")
}

/// `h(p/q) = log max(|p|, q)` for a reduced fraction.
pub fn log_height_rational(p: &BigInt, q: &BigInt, precision: Precision) -> Result<RealEnclosure> {
    if !q.is_positive() {
        return Err(Error::Precondition("denominator must be positive".into()));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::NotReduced {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let m = p.abs().max(q.clone());
    ln_integer(&m.to_biguint().unwrap(), precision)
}

/// `h(C_α) = (log 31) / 3`, after certifying that `C_α` is a root of
/// `31x^3 - 31x^2 + 10x - 1` and that the conjugates lie inside the unit circle.
pub fn height_c_alpha(c: &AlgebraicConstants) -> Result<RealEnclosure> {
    let p = c.precision;
    if !c.c_alpha_min_poly_residual().contains_zero() {
        return Err(Error::Certification("C_alpha is not a root of 31x^3-31x^2+10x-1".into()));
    }
    // product of roots is 1/31, so |C_β|^2 = 1 / (31 C_α)
    let conj_abs = conjugate_c_abs(c)?;
    let one = int(1, p);
    if !(c.c_alpha.certainly_lt(&one) && conj_abs.certainly_lt(&one)) {
        return Err(Error::Certification("a root of 31x^3-31x^2+10x-1 lies outside the unit disc".into()));
    }
    ln_u(31, p).div_int(&BigInt::from(3))
}

/// `|C_β| = |C_γ|`, about 0.4075.
pub fn conjugate_c_abs(c: &AlgebraicConstants) -> Result<RealEnclosure> {
    c.c_alpha.mul_int(&BigInt::from(31)).recip()?.sqrt()
}

/// `(log(b-1) + h(C_α), 2 log b)`: the bound on `h(γ_3)` and what it must stay below.
pub fn gamma3_height_bound(c: &AlgebraicConstants, b: u32) -> Result<(RealEnclosure, RealEnclosure)> {
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    let p = c.precision;
    let h = ln_u(b as u64 - 1, p).add(&height_c_alpha(c)?);
    Ok((h, ln_u(b as u64, p).mul_int(&BigInt::from(2))))
}

/// `E = 1.4 · 30^{t+3} · t^{4.5} · D^2 (1 + log D)(1 + log B) A_1 ⋯ A_t`; Matveev gives `|Λ| > exp(-E)`.
pub fn matveev_log_lower_bound(params: &MatveevParams) -> Result<RealEnclosure> {
    let MatveevParams {
        t,
        degree,
        coeff_bound,
        heights,
    } = params;
    if *t == 0 || *degree == 0 {
        return Err(Error::Precondition("t and D must be at least 1".into()));
    }
    if heights.len() != *t as usize {
        return Err(Error::Precondition(format!("expected {t} heights, got {}", heights.len())));
    }
    let p = coeff_bound.precision();
    if coeff_bound.lower_cmp_ratio(&BigInt::one(), &BigInt::one()).is_lt() {
        return Err(Error::Precondition("B must be at least 1".into()));
    }
    let floor_a = ratio(16, 100, p);
    if heights.iter().any(|a| a.certainly_lt(&floor_a)) {
        return Err(Error::Precondition("every A_i must be at least 0.16".into()));
    }
    let t_e = int(*t as i64, p);
    let t_pow = t_e.powi(4)?.mul(&t_e.sqrt()?);
    let d = *degree as i64;
    let one = int(1, p);
    let mut e = ratio(7, 5, p)
        .mul(&int(30, p).powi(*t as i64 + 3)?)
        .mul(&t_pow)
        .mul_int(&BigInt::from(d * d))
        .mul(&one.add(&ln_u(d as u64, p)))
        .mul(&one.add(&coeff_bound.ln()?));
    for a in heights {
        e = e.mul(a);
    }
    Ok(e)
}

fn lambda1_params(c: &AlgebraicConstants, b: u32, n: u64) -> MatveevParams {
    let p = c.precision;
    let log_b = ln_u(b as u64, p);
    MatveevParams {
        t: 3,
        degree: 3,
        coeff_bound: int(n as i64 + 2, p),
        heights: vec![
            c.log_alpha.clone(),
            log_b.mul_int(&BigInt::from(3)),
            log_b.mul_int(&BigInt::from(6)),
        ],
    }
}

/// The `b`- and `n`-free part of Matveev's bound for `Λ_1`:
/// `E / ((1 + log(n+2)) log^2 b)`.
pub fn lambda1_prefactor(c: &AlgebraicConstants, b: u32, n: u64) -> Result<RealEnclosure> {
    let p = c.precision;
    let e = matveev_log_lower_bound(&lambda1_params(c, b, n))?;
    let log_b = ln_u(b as u64, p);
    let one_plus = int(1, p).add(&ln_u(n + 2, p));
    e.div(&one_plus.mul(&log_b.square()))
}

/// Coefficient of `log^2 n log^3 b` in Matveev's bound for `Λ_2` with
/// `A_3 = 1.1e14 log n log^2 b`, using `1 + log(n+2) <= 2 log n`.
pub fn lambda2_coefficient(c: &AlgebraicConstants, b: u32, n: u64) -> Result<RealEnclosure> {
    if n < LOG_CROSSOVER_N {
        return Err(Error::Precondition(format!("needs n >= {LOG_CROSSOVER_N}")));
    }
    let p = c.precision;
    let log_b = ln_u(b as u64, p);
    let log_n = ln_u(n, p);
    let a3 = dec(11, 13, p).mul(&log_n).mul(&log_b.square());
    let mut params = lambda1_params(c, b, n);
    params.heights[2] = a3;
    let e = matveev_log_lower_bound(&params)?;
    let one_plus = int(1, p).add(&ln_u(n + 2, p));
    // E = coeff * (1 + log(n+2)) / (2 log n) * log^2 n log^3 b  <=  coeff * log^2 n log^3 b
    Ok(e.div(&one_plus.mul(&log_n).mul(&log_b.powi(3)?))?
        .mul_int(&BigInt::from(2)))
}

/// Is `1 + log(n+2) <= 2 log n`? `None` if undecided at this precision.
pub fn log_crossover(n: u64, precision: Precision) -> Option<bool> {
    if n == 0 {
        return Some(false);
    }
    let lhs = int(1, precision).add(&ln_u(n + 2, precision));
    let rhs = ln_u(n, precision).mul_int(&BigInt::from(2));
    if lhs.certainly_le(&rhs) {
        Some(true)
    } else if rhs.certainly_lt(&lhs) {
        Some(false)
    } else {
        None
    }
}

/// Upper bound on `n - m`: `1e14 log n log^2 b / log α`.
///
/// Also checks that Matveev's exact prefactor at these parameters stays below
/// the rounded `2e13` and that `4e13 log n log^2 b + log 6 <= 1e14 log n log^2 b`.
pub fn lambda1_gap_bound(c: &AlgebraicConstants, b: u32, n: u64) -> Result<RealEnclosure> {
    if n < LOG_CROSSOVER_N {
        return Err(Error::Precondition(format!(
            "the gap bound needs n >= {LOG_CROSSOVER_N}, got {n}"
        )));
    }
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    let p = c.precision;
    let prefactor = lambda1_prefactor(c, b, n)?;
    if !prefactor.certainly_le(&dec(2, 13, p)) {
        return Err(Error::Certification(format!(
            "Matveev prefactor {prefactor} exceeds 2e13 at b={b}, n={n}"
        )));
    }
    let log_b = ln_u(b as u64, p);
    let log_n = ln_u(n, p);
    let rhs = dec(1, 14, p).mul(&log_n).mul(&log_b.square());
    let lhs = dec(4, 13, p).mul(&log_n).mul(&log_b.square()).add(&ln_u(6, p));
    if !lhs.certainly_le(&rhs) {
        return Err(Error::Certification(format!("gap chain fails at b={b}, n={n}")));
    }
    rhs.div(&c.log_alpha)
}

/// `4 T log^2 T`: any `x` with `x / log^2 x < T` satisfies `x < 4 T log^2 T` (for `T > 256`).
pub fn guzman_luca(t: &RealEnclosure) -> Result<RealEnclosure> {
    let p = t.precision();
    if !int(256, p).certainly_lt(t) {
        return Err(Error::Precondition("T must exceed 16^2 = 256".into()));
    }
    Ok(t.mul(&t.ln()?.square()).mul_int(&BigInt::from(4)))
}

/// Reproduces the bound chain for base `b`.
pub fn search_bound(c: &AlgebraicConstants, b: u32) -> Result<BoundReport> {
    if !(2..=100).contains(&b) {
        return Err(Error::Precondition(format!("base must be in [2, 100], got {b}")));
    }
    search_bound_unchecked(c, b)
}

/// [`search_bound`] without the `b <= 100` restriction.
pub fn search_bound_unchecked(c: &AlgebraicConstants, b: u32) -> Result<BoundReport> {
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    let p = c.precision;
    let fail = |what: &str| Err(Error::Certification(format!("{what} fails at b={b}")));

    // the prefactors do not depend on n; evaluate at the first admissible n
    let coeff_lambda1 = lambda1_prefactor(c, b, LOG_CROSSOVER_N)?;
    if !coeff_lambda1.certainly_le(&dec(2, 13, p)) {
        return fail("Matveev prefactor <= 2e13");
    }
    let coeff_lambda2 = lambda2_coefficient(c, b, LOG_CROSSOVER_N)?;
    if !coeff_lambda2.certainly_le(&dec(73, 25, p)) {
        return fail("Lambda_2 coefficient <= 7.3e26");
    }
    // n log α - log 5 < 7.3e26 log^2 n log^3 b  =>  n < 2e27 log^2 n log^3 b
    if !dec(73, 25, p).div(&c.log_alpha)?.certainly_lt(&dec(2, 27, p)) {
        return fail("7.3e26 / log alpha < 2e27");
    }

    let log_b = ln_u(b as u64, p);
    let t_value = dec(2, 27, p).mul(&log_b.powi(3)?);
    let chain_value = guzman_luca(&t_value)?;
    let log_t = t_value.ln()?;
    let log_t_bound = int(63, p).add(&log_b.ln()?.mul_int(&BigInt::from(3)));
    let ninety_log_b = log_b.mul_int(&BigInt::from(90));
    if !log_t.certainly_lt(&log_t_bound) {
        return fail("log T < 63 + 3 log log b");
    }
    if !log_t_bound.certainly_lt(&ninety_log_b) {
        return fail("63 + 3 log log b < 90 log b");
    }
    let chain_simplified = dec(8, 27, p).mul(&log_b.powi(3)?).mul(&ninety_log_b.square());
    let m_b = dec(65, 30, p).mul(&log_b.powi(5)?);
    if !chain_value.certainly_lt(&chain_simplified) || !chain_simplified.certainly_lt(&m_b) {
        return fail("4T log^2 T < (8e27 log^3 b)(90 log b)^2 < 6.5e31 log^5 b");
    }
    if !t_value.certainly_le(&m_b) {
        return fail("T <= M_b");
    }
    let m_b_ceil = m_b.ceil_upper().to_biguint().expect("M_b is positive");
    Ok(BoundReport {
        b,
        coeff_lambda1,
        coeff_lambda1_rounded: 2e13,
        gap_coeff: 1e14,
        coeff_lambda2,
        coeff_lambda2_rounded: 7.3e26,
        t_value,
        log_t,
        log_t_bound,
        ninety_log_b,
        chain_value,
        chain_simplified,
        m_b,
        m_b_ceil,
    })
}

/// `((n-2) log α / log b, n)`: the window that must contain `l`.
///
/// Its lower end rests on `α^{n-2} <= N_n`, which only holds for `n <= 2`
/// (see [`crate::sequence::check_growth_window`]); [`ell_lower_corrected`] gives
/// the `α^{n-3}` variant that does hold.
pub fn ell_range(c: &AlgebraicConstants, n: u64, b: u32) -> Result<(RealEnclosure, u64)> {
    if n < 4 {
        return Err(Error::Precondition(format!("needs n >= 4, got {n}")));
    }
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    let lo = c
        .log_alpha
        .mul_int(&BigInt::from(n - 2))
        .div(&ln_u(b as u64, c.precision))?;
    Ok((lo, n))
}

/// `(n-3) log α / log b`, from `α^{n-3} <= N_n`.
pub fn ell_lower_corrected(c: &AlgebraicConstants, n: u64, b: u32) -> Result<RealEnclosure> {
    if n < 3 || b < 2 {
        return Err(Error::Precondition("needs n >= 3 and b >= 2".into()));
    }
    c.log_alpha
        .mul_int(&BigInt::from(n - 3))
        .div(&ln_u(b as u64, c.precision))
}

/// `ceil(M_b)` without the full report.
pub fn m_b_ceil(c: &AlgebraicConstants, b: u32) -> BigUint {
    let log_b = ln_u(b as u64, c.precision);
    let m = dec(65, 30, c.precision).mul(&log_b.powi(5).unwrap());
    m.ceil_upper().to_biguint().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> std::sync::Arc<AlgebraicConstants> {
        AlgebraicConstants::cached(Precision::digits(60)).unwrap()
    }

    #[test]
    fn rational_heights() {
        let p = Precision::digits(40);
        let h = |a: i64, b: i64| log_height_rational(&BigInt::from(a), &BigInt::from(b), p);
        assert!(h(1, 1).unwrap().contains_zero());
        assert!((h(3, 6).is_err()));
        assert!((h(-5, 2).unwrap().to_f64() - 5f64.ln()).abs() < 1e-15);
        assert!((h(3, 6 + 1).unwrap().to_f64() - 7f64.ln()).abs() < 1e-15);
        assert!(matches!(h(2, 4), Err(Error::NotReduced { .. })));
        assert!(matches!(h(1, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn c_alpha_height() {
        let c = consts();
        let h = height_c_alpha(&c).unwrap();
        assert!((h.to_f64() - 31f64.ln() / 3.0).abs() < 1e-15);
        let conj = conjugate_c_abs(&c).unwrap();
        assert!((conj.to_f64() - 0.407506).abs() < 1e-6);
    }

    #[test]
    fn matveev_degenerate_t1_is_positive() {
        let p = Precision::digits(40);
        let params = MatveevParams {
            t: 1,
            degree: 1,
            coeff_bound: int(1, p),
            heights: vec![ratio(16, 100, p)],
        };
        assert!(matveev_log_lower_bound(&params).unwrap().is_positive());
    }

    #[test]
    fn matveev_rejects_bad_params() {
        let p = Precision::digits(40);
        let mut params = MatveevParams {
            t: 2,
            degree: 3,
            coeff_bound: int(10, p),
            heights: vec![ratio(1, 10, p), int(1, p)],
        };
        assert!(matches!(matveev_log_lower_bound(&params), Err(Error::Precondition(_))));
        params.heights.pop();
        assert!(matches!(matveev_log_lower_bound(&params), Err(Error::Precondition(_))));
    }

    #[test]
    fn guzman_luca_precondition() {
        let p = Precision::digits(40);
        assert!(guzman_luca(&int(256, p)).is_err());
        assert!(guzman_luca(&int(257, p)).is_ok());
    }

    #[test]
    fn gap_bound_preconditions() {
        let c = consts();
        assert!(matches!(lambda1_gap_bound(&c, 2, 4), Err(Error::Precondition(_))));
        assert!(lambda1_gap_bound(&c, 2, 5).is_ok());
    }

    #[test]
    fn ell_range_preconditions() {
        let c = consts();
        assert!(ell_range(&c, 3, 2).is_err());
        assert!(ell_range(&c, 4, 1).is_err());
    }

    #[test]
    fn search_bound_rejects_out_of_scope_base() {
        let c = consts();
        assert!(search_bound(&c, 101).is_err());
        assert!(search_bound_unchecked(&c, 101).is_ok());
    }
}
