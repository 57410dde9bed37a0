//! Dujella–Pethő reduction and the two-step campaign over bases `2..=100`.
//!
//! For a convergent `p/q` of `γ̂` with `q > 6M` and
//! `ε = ||μ̂ q|| - M ||γ̂ q|| > 0`, the inequality
//! `0 < |u γ̂ - v + μ̂| < A B^{-w}` has no solution with `u <= M` and
//! `w >= log(A q / ε) / log B`. The campaign applies this with
//! `γ̂ = log b / log α` twice:
//!
//! * step 1, `μ̂ = log(a / ((b-1) C_α)) / log α - 2`, bounds `n` when `m = 0`
//!   (`A = 32`) and `n - m` when `m >= 1` (`A = 16`);
//! * step 2, `μ̂` shifted by `-log(1 + α^{-(n-m)}) / log α` for every
//!   `n - m` up to the step-1 gap bound, bounds `n` (`A = 27`).

use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{CaseFailure, Error, Result};
use crate::highprec::{
    continued_fraction_convergents, ln_integer, ratio_ln_f64, AlgebraicConstants, Convergent, Precision,
    RealEnclosure,
};

/// Convergents tried per instance before giving up on it.
pub const MAX_CONVERGENT_ATTEMPTS: usize = 10;
/// Precision increases (each by 50%) before a base is reported as failed.
pub const MAX_ESCALATIONS: usize = 3;

/// Coefficient used for `m = 0` in step 1; `12 / log α ≈ 31.39`.
pub const A_STEP1_M0: u32 = 32;
/// Coefficient used for `m >= 1` in step 1; `6 / log α ≈ 15.70`.
pub const A_STEP1_GAP: u32 = 16;
/// Coefficient used in step 2; `10 / log α ≈ 26.16`.
pub const A_STEP2: u32 = 27;

/// Precision used only for the final `log(Aq/ε) / log B` comparison.
const THRESHOLD_PRECISION: Precision = Precision::digits(40);

/// One application of the reduction lemma.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionInstance {
    pub gamma_hat: RealEnclosure,
    pub mu_hat: RealEnclosure,
    /// `A > 0`.
    pub a_coeff: RealEnclosure,
    /// `B > 1`.
    pub b_base: RealEnclosure,
    /// Bound `M` on `u`.
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub m_bound: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutcome {
    pub convergent: Convergent,
    pub epsilon: RealEnclosure,
    /// Smallest integer `w` certified to satisfy `B^w >= A q / ε`.
    pub w_threshold: u64,
    /// Convergents skipped because ε was not certified positive.
    pub retries: usize,
}

/// Certified lower bounds of `B^0, B^1, ...` at [`THRESHOLD_PRECISION`], grown on demand.
#[derive(Debug)]
pub struct PowerLadder {
    base: RealEnclosure,
    powers: RwLock<Vec<RealEnclosure>>,
}

impl PowerLadder {
    pub fn new(base: &RealEnclosure) -> Result<Self> {
        let base = base.with_precision(THRESHOLD_PRECISION);
        if !base.certainly_gt_integer(&BigInt::from(1)) {
            return Err(Error::Precondition("B must be certified > 1".into()));
        }
        let one = RealEnclosure::from_integer(1, base.precision());
        Ok(PowerLadder {
            base,
            powers: RwLock::new(vec![one]),
        })
    }

    fn power(&self, w: usize) -> RealEnclosure {
        if let Some(p) = self.powers.read().unwrap().get(w) {
            return p.clone();
        }
        let mut powers = self.powers.write().unwrap();
        while powers.len() <= w {
            let next = powers.last().unwrap().mul(&self.base);
            powers.push(next);
        }
        powers[w].clone()
    }

    /// Smallest `w` with `x <= B^w` certified.
    pub fn first_at_least(&self, x: &RealEnclosure) -> u64 {
        let guess = (x.upper_f64().max(1.0).ln() / self.base.lower_f64().ln()).floor().max(0.0) as usize;
        let mut w = guess.saturating_sub(1);
        while !x.certainly_le(&self.power(w)) {
            w += 1;
        }
        while w > 0 && x.certainly_le(&self.power(w - 1)) {
            w -= 1;
        }
        w as u64
    }
}

/// Convergents of `γ̂` past `6M`, each with the enclosure of `M ||γ̂ q||`.
#[derive(Debug)]
pub struct PreparedGamma {
    pub gamma_hat: RealEnclosure,
    pub m_bound: BigUint,
    candidates: Vec<(Convergent, RealEnclosure)>,
}

impl PreparedGamma {
    pub fn new(gamma_hat: &RealEnclosure, m_bound: &BigUint) -> Result<Self> {
        if gamma_hat.is_point() {
            return Err(Error::CollapsedRational(format!(
                "gamma_hat = {} is an exact rational",
                gamma_hat.to_sci_string(20)
            )));
        }
        let m = BigInt::from_biguint(Sign::Plus, m_bound.clone());
        let q_min = &m * 6;
        let convergents = continued_fraction_convergents(gamma_hat, &q_min)?;
        let mut candidates = Vec::new();
        for c in convergents.into_iter().filter(|c| c.q > q_min) {
            let dist = gamma_hat.mul_int(&c.q).nearest_int_distance()?;
            candidates.push((c, dist.mul_int(&m)));
            if candidates.len() == MAX_CONVERGENT_ATTEMPTS {
                break;
            }
        }
        if candidates.is_empty() {
            return Err(Error::CollapsedRational(
                "continued fraction of gamma_hat terminated before q > 6M".into(),
            ));
        }
        Ok(PreparedGamma {
            gamma_hat: gamma_hat.clone(),
            m_bound: m_bound.clone(),
            candidates,
        })
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Convergent> {
        self.candidates.iter().map(|(c, _)| c)
    }

    /// Finds the first candidate with ε certified positive.
    pub fn reduce(&self, mu_hat: &RealEnclosure, a_coeff: &RealEnclosure, ladder: &PowerLadder) -> Result<ReductionOutcome> {
        let (convergent, epsilon, retries) = self.first_positive_epsilon(mu_hat)?;
        let w_threshold = threshold(a_coeff, &convergent.q, &epsilon, ladder)?;
        Ok(ReductionOutcome {
            convergent,
            epsilon,
            w_threshold,
            retries,
        })
    }

    fn first_positive_epsilon(&self, mu_hat: &RealEnclosure) -> Result<(Convergent, RealEnclosure, usize)> {
        for (k, (c, m_gamma_dist)) in self.candidates.iter().enumerate() {
            let mu_dist = match mu_hat.mul_int(&c.q).nearest_int_distance() {
                Ok(d) => d,
                Err(Error::Ambiguous { .. }) => continue,
                Err(e) => return Err(e),
            };
            let eps = mu_dist.sub(m_gamma_dist);
            if eps.is_positive() {
                return Ok((c.clone(), eps, k));
            }
        }
        Err(Error::EpsilonNonPositive {
            tried: self.candidates.len(),
        })
    }
}

/// Smallest integer `w` with `B^w >= A q / ε_lo`, certified.
fn threshold(a_coeff: &RealEnclosure, q: &BigInt, epsilon: &RealEnclosure, ladder: &PowerLadder) -> Result<u64> {
    let p = ladder.base.precision();
    let mut eps_lo = epsilon.lower_point().with_precision(p);
    if !eps_lo.is_positive() {
        // ε is below the coarse grid; stay at its own precision
        eps_lo = epsilon.lower_point();
    }
    let x = a_coeff.with_precision(p).mul_int(q).div(&eps_lo)?;
    Ok(ladder.first_at_least(&x))
}

/// One-shot reduction of a single instance.
pub fn dujella_petho(instance: &ReductionInstance) -> Result<ReductionOutcome> {
    if !instance.a_coeff.is_positive() {
        return Err(Error::Precondition("A must be positive".into()));
    }
    if instance.m_bound == BigUint::from(0u32) {
        return Err(Error::Precondition("M must be at least 1".into()));
    }
    let ladder = PowerLadder::new(&instance.b_base)?;
    let prepared = PreparedGamma::new(&instance.gamma_hat, &instance.m_bound)?;
    prepared.reduce(&instance.mu_hat, &instance.a_coeff, &ladder)
}

/// `12 / α^n`, the bound on `|z_1|` when `m = 0` (valid for `n >= 7`).
pub fn z_bound_m0(c: &AlgebraicConstants, n: u64) -> Result<RealEnclosure> {
    if n < 7 {
        return Err(Error::Precondition(format!("the m = 0 bound needs n >= 7, got {n}")));
    }
    Ok(RealEnclosure::from_integer(12, c.precision).mul(&c.alpha_pow(-(n as i64))))
}

/// `6 / α^{n-m}`, the bound on `z_1 > 0` when `m >= 1`.
pub fn z_bound_general(c: &AlgebraicConstants, n: u64, m: u64) -> Result<RealEnclosure> {
    if m < 1 || n < m {
        return Err(Error::Precondition(format!("needs 1 <= m <= n, got n={n}, m={m}")));
    }
    Ok(RealEnclosure::from_integer(6, c.precision).mul(&c.alpha_pow(-((n - m) as i64))))
}

/// `z_1 = l log b - (n+2) log α + log(a / ((b-1) C_α))`.
pub fn z1(c: &AlgebraicConstants, n: u64, ell: u32, a: u32, b: u32) -> Result<RealEnclosure> {
    let p = c.precision;
    let ln = |v: u64| ln_integer(&BigUint::from(v), p);
    Ok(ln(b as u64)?
        .mul_int(&BigInt::from(ell))
        .sub(&c.log_alpha.mul_int(&BigInt::from(n + 2)))
        .add(&ln(a as u64)?)
        .sub(&ln(b as u64 - 1)?)
        .sub(&c.c_alpha.ln()?))
}

/// `z_2 = z_1 - log(1 + α^{m-n})`.
pub fn z2(c: &AlgebraicConstants, n: u64, m: u64, ell: u32, a: u32, b: u32) -> Result<RealEnclosure> {
    let shift = RealEnclosure::from_integer(1, c.precision)
        .add(&c.alpha_pow(m as i64 - n as i64))
        .ln()?;
    Ok(z1(c, n, ell, a, b)?.sub(&shift))
}

/// The exact values behind the rounded coefficients 32, 16 and 27.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCheck {
    pub name: &'static str,
    pub exact: RealEnclosure,
    pub rounded: u32,
}

pub fn coefficient_checks(c: &AlgebraicConstants) -> Result<Vec<CoefficientCheck>> {
    let mk = |name, num: i64, rounded| -> Result<CoefficientCheck> {
        Ok(CoefficientCheck {
            name,
            exact: RealEnclosure::from_integer(num, c.precision).div(&c.log_alpha)?,
            rounded,
        })
    };
    Ok(vec![
        mk("12/log(alpha)", 12, A_STEP1_M0)?,
        mk("6/log(alpha)", 6, A_STEP1_GAP)?,
        mk("10/log(alpha)", 10, A_STEP2)?,
    ])
}

/// Shared per-precision data: constants, `log a` tables, the `α` power ladder.
#[derive(Debug)]
pub struct ReductionContext {
    pub constants: Arc<AlgebraicConstants>,
    ladder: PowerLadder,
    /// `log k / log α` for `k = 0..` (index 0 unused).
    log_ratio: Vec<RealEnclosure>,
    /// `log C_α / log α`
    log_c_ratio: RealEnclosure,
    /// `log(1 + α^{-g}) / log α`, filled lazily.
    shifts: RwLock<Vec<RealEnclosure>>,
}

impl ReductionContext {
    pub fn new(precision: Precision, max_base: u32) -> Result<Self> {
        let constants = AlgebraicConstants::cached(precision)?;
        let la = &constants.log_alpha;
        let mut log_ratio = vec![RealEnclosure::from_integer(0, precision)];
        for k in 1..=max_base.max(2) as u64 {
            log_ratio.push(ln_integer(&BigUint::from(k), precision)?.div(la)?);
        }
        let log_c_ratio = constants.c_alpha.ln()?.div(la)?;
        let ladder = PowerLadder::new(&constants.alpha)?;
        Ok(ReductionContext {
            constants,
            ladder,
            log_ratio,
            log_c_ratio,
            shifts: RwLock::new(Vec::new()),
        })
    }

    pub fn precision(&self) -> Precision {
        self.constants.precision
    }

    fn ensure_shifts(&self, gap_max: usize) -> Result<()> {
        if self.shifts.read().unwrap().len() > gap_max {
            return Ok(());
        }
        let mut shifts = self.shifts.write().unwrap();
        let c = &self.constants;
        let one = RealEnclosure::from_integer(1, c.precision);
        while shifts.len() <= gap_max {
            let g = shifts.len() as i64;
            let s = one.add(&c.alpha_pow(-g)).ln()?.div(&c.log_alpha)?;
            shifts.push(s);
        }
        Ok(())
    }

    /// `γ̂ = log b / log α`
    pub fn gamma_hat(&self, b: u32) -> RealEnclosure {
        self.log_ratio[b as usize].clone()
    }

    /// Step-1 shift `μ̂ = log(a / ((b-1) C_α)) / log α - 2`.
    pub fn mu_step1(&self, a: u32, b: u32) -> RealEnclosure {
        self.log_ratio[a as usize]
            .sub(&self.log_ratio[b as usize - 1])
            .sub(&self.log_c_ratio)
            .add_int(&BigInt::from(-2))
    }

    /// Step-2 shift for `n - m = gap`.
    pub fn mu_step2(&self, a: u32, b: u32, gap: u32) -> Result<RealEnclosure> {
        self.ensure_shifts(gap as usize)?;
        Ok(self.mu_step1(a, b).sub(&self.shifts.read().unwrap()[gap as usize]))
    }

    fn coeff(&self, a: u32) -> RealEnclosure {
        RealEnclosure::from_integer(a, self.precision())
    }
}

/// Step-1 outcome for one digit `a`.
#[derive(Clone, Debug, Serialize)]
pub struct Step1Case {
    pub a: u32,
    pub convergent_index: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    pub epsilon_lower: f64,
    pub retries: usize,
    /// Bound on `n` for `m = 0` (with `A = 32`).
    pub m0_threshold: u64,
    /// Bound on `n - m` for `m >= 1` (with `A = 16`).
    pub gap_threshold: u64,
}

/// Worst step-2 case for one digit `a`.
#[derive(Clone, Debug, Serialize)]
pub struct Step2Summary {
    pub a: u32,
    pub max_threshold: u64,
    pub worst_gap: u32,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    pub epsilon_lower: f64,
    pub max_retries: usize,
}

/// Everything the campaign learned about one base.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignResult {
    pub b: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub m_bound: BigUint,
    pub digits: u32,
    pub step1: Vec<Step1Case>,
    pub step1_m0_bound: u64,
    pub gap_bound: u64,
    pub step2: Vec<Step2Summary>,
    pub step2_bound: u64,
    /// `thresholds[a-1][gap]`
    #[serde(skip)]
    pub step2_thresholds: Vec<Vec<u64>>,
}

impl CampaignResult {
    /// Step-2 bound on `n` for digit `a` and gap `n - m`.
    pub fn step2_threshold(&self, a: u32, gap: u64) -> Option<u64> {
        self.step2_thresholds
            .get(a.checked_sub(1)? as usize)?
            .get(gap as usize)
            .copied()
    }

    /// Step-1 `m = 0` bound for digit `a`.
    pub fn m0_threshold(&self, a: u32) -> Option<u64> {
        self.step1.iter().find(|c| c.a == a).map(|c| c.m0_threshold)
    }
}

fn case_failure(b: u32, a: u32, gap: Option<u32>, digits: u32, err: &Error) -> CaseFailure {
    let tried = match err {
        Error::EpsilonNonPositive { tried } => *tried,
        _ => 0,
    };
    CaseFailure {
        base: b,
        digit: a,
        gap,
        convergents_tried: tried,
        digits,
        reason: err.to_string(),
    }
}

/// Step 1 for base `b`, returning per-digit detail.
pub fn reduce_step1_detailed(
    ctx: &ReductionContext,
    b: u32,
    m_bound: &BigUint,
) -> std::result::Result<Vec<Step1Case>, Vec<CaseFailure>> {
    let digits = ctx.precision().get();
    let prepared = PreparedGamma::new(&ctx.gamma_hat(b), m_bound)
        .map_err(|e| vec![case_failure(b, 0, None, digits, &e)])?;
    let results: Vec<std::result::Result<Step1Case, CaseFailure>> = (1..b)
        .into_par_iter()
        .map(|a| {
            let mu = ctx.mu_step1(a, b);
            let out = prepared
                .reduce(&mu, &ctx.coeff(A_STEP1_M0), &ctx.ladder)
                .map_err(|e| case_failure(b, a, None, digits, &e))?;
            let gap_threshold = threshold(&ctx.coeff(A_STEP1_GAP), &out.convergent.q, &out.epsilon, &ctx.ladder)
                .map_err(|e| case_failure(b, a, None, digits, &e))?;
            Ok(Step1Case {
                a,
                convergent_index: out.convergent.index,
                q: out.convergent.q.clone(),
                epsilon_lower: out.epsilon.lower_f64(),
                retries: out.retries,
                m0_threshold: out.w_threshold,
                gap_threshold,
            })
        })
        .collect();
    collect_cases(results)
}

fn collect_cases<T>(results: Vec<std::result::Result<T, CaseFailure>>) -> std::result::Result<Vec<T>, Vec<CaseFailure>> {
    let mut ok = Vec::with_capacity(results.len());
    let mut failed = Vec::new();
    for r in results {
        match r {
            Ok(v) => ok.push(v),
            Err(f) => failed.push(f),
        }
    }
    if failed.is_empty() {
        Ok(ok)
    } else {
        Err(failed)
    }
}

/// `(m0_bound, gap_bound)`: maxima of the step-1 thresholds over `a = 1..b-1`.
pub fn reduce_step1(ctx: &ReductionContext, b: u32, m_bound: &BigUint) -> Result<(u64, u64)> {
    check_base(b)?;
    let cases = reduce_step1_detailed(ctx, b, m_bound).map_err(Error::Campaign)?;
    Ok((
        cases.iter().map(|c| c.m0_threshold).max().unwrap_or(0),
        cases.iter().map(|c| c.gap_threshold).max().unwrap_or(0),
    ))
}

type Step2Detail = (Vec<Step2Summary>, Vec<Vec<u64>>);

/// Step 2 for base `b` over every `a` and every gap in `0..=gap_max`.
pub fn reduce_step2_detailed(
    ctx: &ReductionContext,
    b: u32,
    gap_max: u64,
    m_bound: &BigUint,
) -> std::result::Result<Step2Detail, Vec<CaseFailure>> {
    let digits = ctx.precision().get();
    let prepared = PreparedGamma::new(&ctx.gamma_hat(b), m_bound)
        .map_err(|e| vec![case_failure(b, 0, None, digits, &e)])?;
    ctx.ensure_shifts(gap_max as usize)
        .map_err(|e| vec![case_failure(b, 0, None, digits, &e)])?;
    let coeff = ctx.coeff(A_STEP2);
    let per_a: Vec<std::result::Result<(Step2Summary, Vec<u64>), CaseFailure>> = (1..b)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::with_capacity(gap_max as usize + 1);
            let mut summary = Step2Summary {
                a,
                max_threshold: 0,
                worst_gap: 0,
                q: BigInt::from(0),
                epsilon_lower: 0.0,
                max_retries: 0,
            };
            for gap in 0..=gap_max as u32 {
                let mu = ctx
                    .mu_step2(a, b, gap)
                    .map_err(|e| case_failure(b, a, Some(gap), digits, &e))?;
                let out = prepared
                    .reduce(&mu, &coeff, &ctx.ladder)
                    .map_err(|e| case_failure(b, a, Some(gap), digits, &e))?;
                summary.max_retries = summary.max_retries.max(out.retries);
                if out.w_threshold > summary.max_threshold || gap == 0 {
                    summary.max_threshold = out.w_threshold.max(summary.max_threshold);
                    summary.worst_gap = gap;
                    summary.q = out.convergent.q.clone();
                    summary.epsilon_lower = out.epsilon.lower_f64();
                }
                row.push(out.w_threshold);
            }
            Ok((summary, row))
        })
        .collect();
    let rows = collect_cases(per_a)?;
    Ok(rows.into_iter().unzip())
}

/// Maximum step-2 threshold over all `a` and `n - m` in `0..=gap_max`.
pub fn reduce_step2(ctx: &ReductionContext, b: u32, gap_max: u64, m_bound: &BigUint) -> Result<u64> {
    check_base(b)?;
    let (summary, _) = reduce_step2_detailed(ctx, b, gap_max, m_bound).map_err(Error::Campaign)?;
    Ok(summary.iter().map(|s| s.max_threshold).max().unwrap_or(0))
}

fn check_base(b: u32) -> Result<()> {
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    Ok(())
}

fn run_base(ctx: &ReductionContext, b: u32) -> std::result::Result<CampaignResult, Vec<CaseFailure>> {
    let m_bound = bounds::m_b_ceil(&ctx.constants, b);
    let step1 = reduce_step1_detailed(ctx, b, &m_bound)?;
    let step1_m0_bound = step1.iter().map(|c| c.m0_threshold).max().unwrap_or(0);
    let gap_bound = step1.iter().map(|c| c.gap_threshold).max().unwrap_or(0);
    let (step2, step2_thresholds) = reduce_step2_detailed(ctx, b, gap_bound, &m_bound)?;
    let step2_bound = step2.iter().map(|s| s.max_threshold).max().unwrap_or(0);
    Ok(CampaignResult {
        b,
        m_bound,
        digits: ctx.precision().get(),
        step1,
        step1_m0_bound,
        gap_bound,
        step2,
        step2_bound,
        step2_thresholds,
    })
}

/// Per-base results plus global maxima.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignSummary {
    pub bases: Vec<CampaignResult>,
    pub global_m0_bound: u64,
    pub global_gap_bound: u64,
    pub global_step2_bound: u64,
}

impl CampaignSummary {
    pub fn base(&self, b: u32) -> Option<&CampaignResult> {
        self.bases.iter().find(|r| r.b == b)
    }
}

/// Full two-step reduction for every base in `bases`.
///
/// A base whose cases cannot all be certified is retried from scratch at 50%
/// more precision, at most [`MAX_ESCALATIONS`] times.
pub fn run_campaign(bases: std::ops::RangeInclusive<u32>, precision: Precision) -> Result<CampaignSummary> {
    if bases.is_empty() {
        return Ok(CampaignSummary {
            bases: Vec::new(),
            global_m0_bound: 0,
            global_gap_bound: 0,
            global_step2_bound: 0,
        });
    }
    check_base(*bases.start())?;
    let ctx = ReductionContext::new(precision, *bases.end())?;
    let outcomes: Vec<std::result::Result<CampaignResult, Vec<CaseFailure>>> = bases
        .clone()
        .into_par_iter()
        .map(|b| {
            let mut attempt = run_base(&ctx, b);
            let mut prec = precision;
            for _ in 0..MAX_ESCALATIONS {
                if attempt.is_ok() {
                    break;
                }
                prec = prec.escalate();
                attempt = ReductionContext::new(prec, b)
                    .map_err(|e| vec![case_failure(b, 0, None, prec.get(), &e)])
                    .and_then(|c| run_base(&c, b));
            }
            attempt
        })
        .collect();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => results.push(r),
            Err(f) => failures.extend(f),
        }
    }
    if !failures.is_empty() {
        return Err(Error::Campaign(failures));
    }
    Ok(CampaignSummary {
        global_m0_bound: results.iter().map(|r| r.step1_m0_bound).max().unwrap_or(0),
        global_gap_bound: results.iter().map(|r| r.gap_bound).max().unwrap_or(0),
        global_step2_bound: results.iter().map(|r| r.step2_bound).max().unwrap_or(0),
        bases: results,
    })
}

/// `log(A q / ε) / log B` as f64, for reporting only.
pub fn threshold_f64(outcome: &ReductionOutcome, a_coeff: f64, b_base: f64) -> f64 {
    let q = &outcome.convergent.q;
    let eps = &outcome.epsilon;
    let ln_q = ratio_ln_f64(q, &BigInt::from(1));
    (a_coeff.ln() + ln_q - eps.lower_f64().ln()) / b_base.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(60)
    }

    #[test]
    fn ladder_finds_smallest_power() {
        let two = RealEnclosure::from_integer(2, p());
        let ladder = PowerLadder::new(&two).unwrap();
        assert_eq!(ladder.first_at_least(&RealEnclosure::from_integer(1024, p())), 10);
        assert_eq!(ladder.first_at_least(&RealEnclosure::from_integer(1025, p())), 11);
        assert_eq!(ladder.first_at_least(&RealEnclosure::from_integer(1, p())), 0);
        assert!(PowerLadder::new(&RealEnclosure::from_integer(1, p())).is_err());
    }

    #[test]
    fn collapsed_gamma_is_fatal() {
        let inst = ReductionInstance {
            gamma_hat: RealEnclosure::from_ratio(7, 3, p()).unwrap(),
            mu_hat: RealEnclosure::from_ratio(1, 2, p()).unwrap(),
            a_coeff: RealEnclosure::from_integer(2, p()),
            b_base: RealEnclosure::from_integer(2, p()),
            m_bound: BigUint::from(1u32),
        };
        assert!(matches!(dujella_petho(&inst), Err(Error::CollapsedRational(_))));
    }

    #[test]
    fn z_bound_preconditions() {
        let c = AlgebraicConstants::cached(p()).unwrap();
        assert!(z_bound_m0(&c, 6).is_err());
        assert!(z_bound_general(&c, 3, 0).is_err());
        assert!(z_bound_general(&c, 3, 4).is_err());
        assert!(z_bound_general(&c, 5, 5).unwrap().contains_integer(&BigInt::from(6)));
    }

    #[test]
    fn empty_campaign() {
        #[allow(clippy::reversed_empty_ranges)]
        let s = run_campaign(5..=4, p()).unwrap();
        assert!(s.bases.is_empty());
    }
}
