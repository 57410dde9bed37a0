//! Interval arithmetic over exact rational endpoints.
//!
//! Every [`RealEnclosure`] is a pair of rationals `lo <= hi` sharing one
//! positive denominator. Values produced by arithmetic live on the dyadic
//! grid `2^-bits` fixed by their [`Precision`]; lower endpoints are rounded
//! toward `-inf` and upper endpoints toward `+inf`, so the true real value is
//! never lost. Exact rational inputs (`7/3`, an integer) keep their own
//! denominator until an operation forces them onto the grid.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 64;

/// Working precision, in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(200);
    /// Smallest precision accepted by the public entry points.
    pub const MIN_DIGITS: u32 = 30;

    pub const fn digits(d: u32) -> Self {
        Precision(d)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Grid resolution in bits: `ceil(d * log2 10) + GUARD_BITS`.
    pub fn bits(self) -> u32 {
        // 3.32193 > log2(10)
        ((self.0 as u64 * 332_193).div_ceil(100_000)) as u32 + GUARD_BITS
    }

    /// 50% more digits, used when a certification fails.
    pub fn escalate(self) -> Self {
        Precision(self.0 + self.0.div_ceil(2))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Den {
    /// `2^k`
    Pow2(u32),
    General(BigInt),
}

impl Den {
    fn value(&self) -> BigInt {
        match self {
            Den::Pow2(k) => BigInt::one() << *k,
            Den::General(d) => d.clone(),
        }
    }
}

/// A certified enclosure `[lo, hi]` of a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEnclosure {
    lo: BigInt,
    hi: BigInt,
    den: Den,
    precision: Precision,
}

/// `floor(num * 2^bits / den)` or the ceiling.
fn rescale(num: &BigInt, den: &Den, bits: u32, up: bool) -> BigInt {
    match den {
        Den::Pow2(k) if *k <= bits => num << (bits - k),
        Den::Pow2(k) => {
            let s = k - bits;
            if up {
                -((-num) >> s)
            } else {
                num >> s
            }
        }
        Den::General(d) => {
            let n = num << bits;
            if up {
                -((-n).div_floor(d))
            } else {
                n.div_floor(d)
            }
        }
    }
}

/// `floor(num/den + 1/2)`.
fn nearest_numer(num: &BigInt, den: &BigInt) -> BigInt {
    let twice: BigInt = num << 1;
    (twice + den).div_floor(&(den << 1))
}

fn ceil_sqrt(v: &BigInt) -> BigInt {
    let s = v.sqrt();
    if &(&s * &s) < v {
        s + 1
    } else {
        s
    }
}

/// Converts `num / den` to f64 without overflowing on large operands.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift_n = num.bits().saturating_sub(60) as i64;
    let shift_d = den.bits().saturating_sub(60) as i64;
    let n = (num >> shift_n as usize).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift_d as usize).to_f64().unwrap_or(f64::NAN);
    let e = shift_n - shift_d;
    (n / d) * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Natural log of `num / den` (both positive) as f64.
pub(crate) fn ratio_ln_f64(num: &BigInt, den: &BigInt) -> f64 {
    let shift_n = num.bits().saturating_sub(60);
    let shift_d = den.bits().saturating_sub(60);
    let n = (num >> shift_n as usize).to_f64().unwrap();
    let d = (den >> shift_d as usize).to_f64().unwrap();
    (n / d).ln() + (shift_n as f64 - shift_d as f64) * std::f64::consts::LN_2
}

impl RealEnclosure {
    /// The exact point enclosure of an integer.
    pub fn from_integer<T: Into<BigInt>>(value: T, precision: Precision) -> Self {
        let v = value.into();
        RealEnclosure {
            lo: v.clone(),
            hi: v,
            den: Den::Pow2(0),
            precision,
        }
    }

    /// The exact point enclosure of `num / den`.
    pub fn from_ratio<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D, precision: Precision) -> Result<Self> {
        let (mut n, mut d) = (num.into(), den.into());
        if d.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() && !g.is_zero() {
            n /= &g;
            d /= &g;
        }
        Ok(Self::with_den(n.clone(), n, d, precision))
    }

    /// The enclosure `[lo_num / den, hi_num / den]`.
    pub fn from_bounds<D: Into<BigInt>>(lo_num: BigInt, hi_num: BigInt, den: D, precision: Precision) -> Result<Self> {
        let d = den.into();
        if !d.is_positive() {
            return Err(Error::Domain("denominator must be positive".into()));
        }
        if lo_num > hi_num {
            return Err(Error::Domain("lower endpoint exceeds upper endpoint".into()));
        }
        Ok(Self::with_den(lo_num, hi_num, d, precision))
    }

    fn with_den(lo: BigInt, hi: BigInt, d: BigInt, precision: Precision) -> Self {
        let den = match d.trailing_zeros() {
            Some(k) if d == BigInt::one() << k => Den::Pow2(k as u32),
            _ => Den::General(d),
        };
        RealEnclosure { lo, hi, den, precision }
    }

    fn on_grid(lo: BigInt, hi: BigInt, precision: Precision) -> Self {
        debug_assert!(lo <= hi);
        RealEnclosure {
            lo,
            hi,
            den: Den::Pow2(precision.bits()),
            precision,
        }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Numerator of the lower endpoint over [`Self::denominator`].
    pub fn lower_numer(&self) -> &BigInt {
        &self.lo
    }

    pub fn upper_numer(&self) -> &BigInt {
        &self.hi
    }

    pub fn denominator(&self) -> BigInt {
        self.den.value()
    }

    pub fn lower_f64(&self) -> f64 {
        ratio_to_f64(&self.lo, &self.den.value())
    }

    pub fn upper_f64(&self) -> f64 {
        ratio_to_f64(&self.hi, &self.den.value())
    }

    /// Midpoint as f64, for display.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&(&self.lo + &self.hi), &(self.den.value() << 1))
    }

    pub fn width_f64(&self) -> f64 {
        ratio_to_f64(&(&self.hi - &self.lo), &self.den.value())
    }

    /// The lower endpoint as a point enclosure.
    pub fn lower_point(&self) -> Self {
        RealEnclosure {
            lo: self.lo.clone(),
            hi: self.lo.clone(),
            den: self.den.clone(),
            precision: self.precision,
        }
    }

    pub fn upper_point(&self) -> Self {
        RealEnclosure {
            lo: self.hi.clone(),
            hi: self.hi.clone(),
            den: self.den.clone(),
            precision: self.precision,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Same value re-rounded (outward) onto the grid of `precision`.
    pub fn with_precision(&self, precision: Precision) -> Self {
        let bits = precision.bits();
        if self.den == Den::Pow2(bits) {
            let mut r = self.clone();
            r.precision = precision;
            return r;
        }
        Self::on_grid(
            rescale(&self.lo, &self.den, bits, false),
            rescale(&self.hi, &self.den, bits, true),
            precision,
        )
    }

    fn grid(&self, precision: Precision) -> (BigInt, BigInt) {
        let bits = precision.bits();
        (
            rescale(&self.lo, &self.den, bits, false),
            rescale(&self.hi, &self.den, bits, true),
        )
    }

    fn joint_precision(&self, other: &Self) -> Precision {
        self.precision.max(other.precision)
    }

    /// `lo > 0`, certified.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Does the enclosure contain `num / den` (den > 0)?
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        let d = self.den.value();
        &self.lo * den <= num * &d && num * &d <= &self.hi * den
    }

    pub fn contains_integer(&self, k: &BigInt) -> bool {
        self.contains_ratio(k, &BigInt::one())
    }

    /// Certified `self < other`: every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        &self.hi * other.den.value() < &other.lo * self.den.value()
    }

    pub fn certainly_le(&self, other: &Self) -> bool {
        &self.hi * other.den.value() <= &other.lo * self.den.value()
    }

    /// Compares the upper endpoint with `num / den`.
    pub fn upper_cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        (&self.hi * den).cmp(&(num * self.den.value()))
    }

    pub fn lower_cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        (&self.lo * den).cmp(&(num * self.den.value()))
    }

    /// Certified `self < k`.
    pub fn certainly_lt_integer(&self, k: &BigInt) -> bool {
        self.upper_cmp_ratio(k, &BigInt::one()) == Ordering::Less
    }

    pub fn certainly_gt_integer(&self, k: &BigInt) -> bool {
        self.lower_cmp_ratio(k, &BigInt::one()) == Ordering::Greater
    }

    /// Smallest integer `>=` the upper endpoint.
    pub fn ceil_upper(&self) -> BigInt {
        -((-&self.hi).div_floor(&self.den.value()))
    }

    /// Largest integer `<=` the lower endpoint.
    pub fn floor_lower(&self) -> BigInt {
        self.lo.div_floor(&self.den.value())
    }

    pub fn neg(&self) -> Self {
        RealEnclosure {
            lo: -&self.hi,
            hi: -&self.lo,
            den: self.den.clone(),
            precision: self.precision,
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if -&self.lo > self.hi { -&self.lo } else { self.hi.clone() };
            RealEnclosure {
                lo: BigInt::zero(),
                hi,
                den: self.den.clone(),
                precision: self.precision,
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.joint_precision(other);
        if self.den == other.den {
            return RealEnclosure {
                lo: &self.lo + &other.lo,
                hi: &self.hi + &other.hi,
                den: self.den.clone(),
                precision: p,
            };
        }
        let (a, b) = self.grid(p);
        let (c, d) = other.grid(p);
        Self::on_grid(a + c, b + d, p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact multiplication by an integer; stays on the current denominator.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (lo, hi) = if k.is_negative() {
            (&self.hi * k, &self.lo * k)
        } else {
            (&self.lo * k, &self.hi * k)
        };
        RealEnclosure {
            lo,
            hi,
            den: self.den.clone(),
            precision: self.precision,
        }
    }

    pub fn add_int(&self, k: &BigInt) -> Self {
        let shift = k * self.den.value();
        RealEnclosure {
            lo: &self.lo + &shift,
            hi: &self.hi + &shift,
            den: self.den.clone(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.joint_precision(other);
        let bits = p.bits();
        let den = match (&self.den, &other.den) {
            (Den::Pow2(a), Den::Pow2(b)) => Den::Pow2(a + b),
            (x, y) => Den::General(x.value() * y.value()),
        };
        let (lo, hi) = if !self.lo.is_negative() && !other.lo.is_negative() {
            (&self.lo * &other.lo, &self.hi * &other.hi)
        } else {
            let c = [
                &self.lo * &other.lo,
                &self.lo * &other.hi,
                &self.hi * &other.lo,
                &self.hi * &other.hi,
            ];
            let lo = c.iter().min().unwrap().clone();
            let hi = c.iter().max().unwrap().clone();
            (lo, hi)
        };
        Self::on_grid(rescale(&lo, &den, bits, false), rescale(&hi, &den, bits, true), p)
    }

    pub fn square(&self) -> Self {
        let sq = self.mul(self);
        if self.contains_zero() {
            // the product of a sign-straddling interval with itself can dip below 0
            let mut r = sq;
            if r.lo.is_negative() {
                r.lo = BigInt::zero();
            }
            r
        } else {
            sq
        }
    }

    /// `1 / self`; fails if the enclosure contains zero.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of an enclosure containing 0".into()));
        }
        let p = self.precision;
        let bits = p.bits();
        let d = self.den.value() << bits;
        // 1/x is decreasing on each sign branch: [1/hi, 1/lo]
        let lo = d.div_floor(&self.hi);
        let hi = -((-&d).div_floor(&self.lo));
        Ok(Self::on_grid(lo, hi, p))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let p = self.joint_precision(other);
        Ok(self.mul(&other.with_precision(p).recip()?))
    }

    /// Division by a non-zero integer, rounded outward.
    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let p = self.precision;
        let bits = p.bits();
        let d = self.den.value() * k.abs();
        let (lo, hi) = if k.is_negative() {
            (-&self.hi, -&self.lo)
        } else {
            (self.lo.clone(), self.hi.clone())
        };
        let lo = (lo << bits).div_floor(&d);
        let hi = -((-(hi << bits)).div_floor(&d));
        Ok(Self::on_grid(lo, hi, p))
    }

    /// Integer power by repeated squaring; negative exponents go through [`Self::recip`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.powi(-e)?.recip();
        }
        let mut result = RealEnclosure::from_integer(1, self.precision);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(result)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::Domain("square root of a negative enclosure".into()));
        }
        let p = self.precision;
        let bits = p.bits();
        let lo = rescale(&self.lo, &self.den, 2 * bits, false).sqrt();
        let hi = ceil_sqrt(&rescale(&self.hi, &self.den, 2 * bits, true));
        Ok(Self::on_grid(lo, hi, p))
    }

    /// Certified natural logarithm.
    pub fn ln(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive enclosure".into()));
        }
        let p = self.precision;
        let d = self.den.value();
        let lo = ln_ratio(&self.lo, &d, p);
        if self.is_point() {
            return Ok(lo);
        }
        let hi = ln_ratio(&self.hi, &d, p);
        Ok(Self::on_grid(lo.lo, hi.hi, p))
    }

    /// Enclosure of `min_k |x - k|` over integers `k`.
    pub fn nearest_int_distance(&self) -> Result<Self> {
        let d = self.den.value();
        let width = &self.hi - &self.lo;
        // width < 1/4  <=>  4 * width < den
        if (&width << 2) >= d {
            return Err(Error::Ambiguous { width: self.width_f64() });
        }
        let dist = |num: &BigInt| -> BigInt {
            // num/d minus nearest integer, as numerator over d
            let k = nearest_numer(num, &d);
            (num - k * &d).abs()
        };
        let half: BigInt = &d >> 1;
        let k_lo = nearest_numer(&self.lo, &d);
        let k_hi = nearest_numer(&self.hi, &d);
        let (lo, hi) = if k_lo == k_hi {
            let k = &k_lo * &d;
            if self.lo >= k {
                (&self.lo - &k, &self.hi - &k)
            } else if self.hi <= k {
                (&k - &self.hi, &k - &self.lo)
            } else {
                let a = &k - &self.lo;
                let b = &self.hi - &k;
                (BigInt::zero(), a.max(b))
            }
        } else {
            // straddles a half-integer; d is continuous there and peaks at 1/2
            let a = dist(&self.lo);
            let b = dist(&self.hi);
            let top = if d.is_even() {
                half.clone()
            } else {
                half.clone() + 1
            };
            (a.min(b), top)
        };
        Ok(RealEnclosure {
            lo,
            hi,
            den: self.den.clone(),
            precision: self.precision,
        })
    }

    /// Nearest integer, if it is certified (the enclosure avoids every half-integer).
    pub fn certified_round(&self) -> Option<BigInt> {
        let d = self.den.value();
        let k_lo = nearest_numer(&self.lo, &d);
        let k_hi = nearest_numer(&self.hi, &d);
        if k_lo != k_hi {
            return None;
        }
        // floor(x + 1/2) maps x = k - 1/2 to k; that tie is not certified
        let edge = ((&k_lo << 1) - 1) * &d;
        if (&self.lo << 1) == edge {
            return None;
        }
        Some(k_lo)
    }

    /// Midpoint in scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let num = &self.lo + &self.hi;
        let den = self.den.value() << 1;
        format_sci(&num, &den, digits.max(1))
    }
}

fn format_sci(num: &BigInt, den: &BigInt, digits: usize) -> String {
    if num.is_zero() {
        return format!("0.{}e0", "0".repeat(digits.saturating_sub(1)));
    }
    let neg = num.is_negative();
    let n = num.abs();
    let est = ratio_ln_f64(&n, den) / std::f64::consts::LN_10;
    let mut e = est.floor() as i64;
    let scaled = |e: i64| -> BigInt {
        let shift = digits as i64 - 1 - e;
        let ten = BigInt::from(10u32);
        let (nn, dd) = if shift >= 0 {
            (&n * ten.pow(shift as u32), den.clone())
        } else {
            (n.clone(), den * ten.pow((-shift) as u32))
        };
        nearest_numer(&nn, &dd)
    };
    let mut m = scaled(e);
    let limit = BigInt::from(10u32).pow(digits as u32);
    if m >= limit {
        e += 1;
        m = scaled(e);
    } else if m < limit.clone() / 10u32 {
        e -= 1;
        m = scaled(e);
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        write!(f, "{}", self.to_sci_string(digits))
    }
}

impl Serialize for RealEnclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RealEnclosure", 3)?;
        st.serialize_field("lower", &self.lower_f64())?;
        st.serialize_field("upper", &self.upper_f64())?;
        st.serialize_field("digits", &self.precision.get())?;
        st.end()
    }
}

/// Sum of `t^(2j+1) / (2j+1)` for `|t| <= t_max`, with the tail folded in.
///
/// `t_max_log2` is an upper bound on `log2 |t|` (negative).
fn atanh_series(t: &RealEnclosure, t_max_log2: f64, precision: Precision) -> RealEnclosure {
    let bits = precision.bits();
    // tail <= |t|^(2J+3) / ((2J+3)(1-t^2)) < 2^-(bits+1) once (2J+3) * |log2 t| >= bits + 2
    let terms = ((bits as f64 + 2.0) / -t_max_log2 / 2.0).ceil() as i64 + 1;
    let t2 = t.square();
    let mut power = t.clone();
    let mut sum = t.clone();
    for j in 1..=terms {
        power = power.mul(&t2);
        sum = sum.add(&power.div_int(&BigInt::from(2 * j + 1)).unwrap());
    }
    let one = BigInt::one();
    let tail = RealEnclosure::on_grid(-&one, one, precision);
    sum.add(&tail)
}

fn ln2_cache() -> &'static Mutex<HashMap<u32, RealEnclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RealEnclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `log 2 = 2 atanh(1/3)`.
pub(crate) fn ln2(precision: Precision) -> RealEnclosure {
    if let Some(v) = ln2_cache().lock().unwrap().get(&precision.get()) {
        return v.clone();
    }
    let third = RealEnclosure::from_ratio(1, 3, precision).unwrap().with_precision(precision);
    let v = atanh_series(&third, -(3f64.log2()), precision).mul_int(&BigInt::from(2));
    ln2_cache().lock().unwrap().insert(precision.get(), v.clone());
    v
}

/// Enclosure of `ln(num / den)`, `num, den > 0`.
fn ln_ratio(num: &BigInt, den: &BigInt, precision: Precision) -> RealEnclosure {
    // choose k with y = r / 2^k in [2/3, 4/3]
    let mut k = num.bits() as i64 - den.bits() as i64;
    let scaled = |k: i64| -> (BigInt, BigInt) {
        if k >= 0 {
            (num.clone(), den << k as usize)
        } else {
            (num << (-k) as usize, den.clone())
        }
    };
    let (mut yn, mut yd) = scaled(k);
    while &yn * 3 > &yd * 4 {
        k += 1;
        (yn, yd) = scaled(k);
    }
    while &yn * 3 < &yd * 2 {
        k -= 1;
        (yn, yd) = scaled(k);
    }
    let t_num = &yn - &yd;
    let t_den = &yn + &yd;
    let mut result = if t_num.is_zero() {
        RealEnclosure::from_integer(0, precision).with_precision(precision)
    } else {
        let t = RealEnclosure::from_ratio(t_num, t_den, precision)
            .unwrap()
            .with_precision(precision);
        // |t| <= 1/5 on [2/3, 4/3]
        atanh_series(&t, -(5f64.log2()), precision).mul_int(&BigInt::from(2))
    };
    if k != 0 {
        result = result.add(&ln2(precision).mul_int(&BigInt::from(k)));
    }
    result
}

/// Natural logarithm of a positive integer.
pub fn ln_integer(value: &BigUint, precision: Precision) -> Result<RealEnclosure> {
    if value.is_zero() {
        return Err(Error::Domain("logarithm of 0".into()));
    }
    RealEnclosure::from_integer(BigInt::from_biguint(Sign::Plus, value.clone()), precision).ln()
}
