//! End-to-end run: bound chain, reduction, search below the reduced bound, checks.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::bounds::{self, ell_lower_corrected, ell_range};
use crate::error::{Error, Result};
use crate::highprec::{AlgebraicConstants, Precision};
use crate::reduction::{run_campaign, CampaignSummary};
use crate::report::{Report, ReportHeader};
use crate::search::{
    self, block_repdigit_scan, compare, expected_table, mersenne_scan, single_term_repdigits, BlockHit,
    MersenneHit, SolutionTuple, VerificationReport, MAX_VERIFIED_BASE, TABLE_N_MAX,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub precision: Precision,
    pub bases: RangeInclusive<u32>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            precision: Precision::DEFAULT,
            bases: 2..=MAX_VERIFIED_BASE,
        }
    }
}

impl PipelineConfig {
    pub fn header(&self) -> ReportHeader {
        ReportHeader::new(self.precision)
            .with("command", "pipeline")
            .with("bases", format!("{}:{}", self.bases.start(), self.bases.end()))
    }
}

/// Per-base summary of the bound chain and both reduction steps.
#[derive(Clone, Debug, Serialize)]
pub struct BaseSummary {
    pub b: u32,
    /// `M_b`, 6 significant digits.
    pub m_b: String,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub m_b_ceil: BigUint,
    pub step1_m0_bound: u64,
    pub gap_bound: u64,
    pub step2_bound: u64,
    pub max_retries: usize,
}

/// Tuples that break a stated constraint, by check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SoundnessReport {
    /// Tuples with `n` at or above the reduction threshold of their case.
    pub threshold_violations: Vec<SolutionTuple>,
    /// Tuples with `n >= 4` and `l <= (n-2) log α / log b` or `l >= n`.
    pub window_violations: Vec<SolutionTuple>,
    /// Same with `(n-3)` in place of `(n-2)`.
    pub corrected_window_violations: Vec<SolutionTuple>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Corollaries {
    /// `N_n` alone as a repdigit with `l >= 3`, as `(n, l, a, b)`.
    pub single_term: Vec<(u64, u32, u64, u64)>,
    /// `N_n = 2^l - 1` with `l >= 3`.
    pub mersenne_l3: Vec<MersenneHit>,
    /// `N_n = 2^l - 1` with `l >= 2`; contains `N_5 = 3`.
    pub mersenne_l2: Vec<MersenneHit>,
    pub one_block: Vec<BlockHit>,
    pub two_block: Vec<BlockHit>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub bases: Vec<BaseSummary>,
    pub global_m0_bound: u64,
    pub global_gap_bound: u64,
    pub global_step2_bound: u64,
    /// Largest `n` searched: the larger of the two `n` bounds from the reduction.
    pub search_n_max: u64,
    /// Solutions with `l >= 3`.
    pub solutions: Vec<SolutionTuple>,
    pub trivial_count: usize,
    /// Comparison of `solutions` with the expected table, restricted to the configured bases.
    pub table: VerificationReport,
    pub corollaries: Option<Corollaries>,
    pub soundness: SoundnessReport,
    pub passed: bool,
}

impl PipelineReport {
    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "reduction: n <= {} (m = 0), n - m <= {}, n <= {} (m >= 1)\n",
            self.global_m0_bound, self.global_gap_bound, self.global_step2_bound
        ));
        s.push_str(&format!(
            "search: n <= {}, {} solutions with l >= 3, {} trivial\n",
            self.search_n_max,
            self.solutions.len(),
            self.trivial_count
        ));
        s.push_str(&format!("Table 1: {}\n", self.table.ratio()));
        if let Some(c) = &self.corollaries {
            s.push_str(&format!("corollaries: {}\n", if c.passed { "ok" } else { "FAILED" }));
        }
        s.push_str(&format!(
            "thresholds: {} violation(s); window (n-2): {} violation(s); window (n-3): {} violation(s)\n",
            self.soundness.threshold_violations.len(),
            self.soundness.window_violations.len(),
            self.soundness.corrected_window_violations.len()
        ));
        s.push_str(if self.passed { "result: PASS\n" } else { "result: FAIL\n" });
        s
    }
}

fn base_summaries(c: &AlgebraicConstants, campaign: &CampaignSummary) -> Result<Vec<BaseSummary>> {
    campaign
        .bases
        .iter()
        .map(|r| {
            let m_b = bounds::search_bound_unchecked(c, r.b)?.m_b;
            Ok(BaseSummary {
                b: r.b,
                m_b: m_b.to_sci_string(6),
                m_b_ceil: r.m_bound.clone(),
                step1_m0_bound: r.step1_m0_bound,
                gap_bound: r.gap_bound,
                step2_bound: r.step2_bound,
                max_retries: r
                    .step1
                    .iter()
                    .map(|s| s.retries)
                    .chain(r.step2.iter().map(|s| s.max_retries))
                    .max()
                    .unwrap_or(0),
            })
        })
        .collect()
}

/// Checks every tuple against the reduction thresholds and the `l` window.
pub fn soundness(c: &AlgebraicConstants, campaign: &CampaignSummary, tuples: &[SolutionTuple]) -> Result<SoundnessReport> {
    let mut rep = SoundnessReport::default();
    for t in tuples {
        let b = t.b as u32;
        let Some(base) = campaign.base(b) else {
            continue;
        };
        let a = t.a as u32;
        let bound = if t.m == 0 {
            base.m0_threshold(a)
        } else {
            base.step2_threshold(a, t.n - t.m)
        };
        // a missing bound means n - m exceeds the step-1 gap bound
        if bound.is_none_or(|w| t.n >= w) {
            rep.threshold_violations.push(t.clone());
        }
        if t.n >= 4 {
            let ell = BigInt::from(t.ell);
            let (lo, hi) = ell_range(c, t.n, b)?;
            if !lo.certainly_lt_integer(&ell) || t.ell as u64 >= hi {
                rep.window_violations.push(t.clone());
            }
            let lo3 = ell_lower_corrected(c, t.n, b)?;
            if !lo3.certainly_lt_integer(&ell) || t.ell as u64 >= hi {
                rep.corrected_window_violations.push(t.clone());
            }
        }
    }
    Ok(rep)
}

fn corollaries() -> Result<Corollaries> {
    let single_term = single_term_repdigits(TABLE_N_MAX, 2..=MAX_VERIFIED_BASE, 3)?;
    let mersenne_l3 = mersenne_scan(TABLE_N_MAX, 3);
    let mersenne_l2 = mersenne_scan(TABLE_N_MAX, 2);
    let one_block = block_repdigit_scan(TABLE_N_MAX, 1, 2)?;
    let two_block = block_repdigit_scan(TABLE_N_MAX, 2, 2)?;
    let passed = single_term == [(9, 3, 1, 3), (15, 3, 3, 6)]
        && mersenne_l3.is_empty()
        && one_block.len() == 1
        && one_block[0].n == 14
        && two_block.is_empty();
    Ok(Corollaries {
        single_term,
        mersenne_l3,
        mersenne_l2,
        one_block,
        two_block,
        passed,
    })
}

/// Bound → reduce → search → verify.
///
/// Passing requires: the table matches, the corollaries hold (full base range
/// only), and no tuple reaches its reduction threshold or leaves the `(n-3)`
/// window. The `(n-2)` window is reported but not required, since genuine
/// solutions such as `(13, 5, 6, 1, 2)` sit on the wrong side of it.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineReport> {
    let bases = config.bases.clone();
    if bases.is_empty() || *bases.start() < 2 {
        return Err(Error::Precondition("pipeline needs a non-empty base range starting at 2 or above".into()));
    }
    let c = AlgebraicConstants::cached(config.precision)?;
    let campaign = run_campaign(bases.clone(), config.precision)?;
    let summaries = base_summaries(&c, &campaign)?;
    let search_n_max = campaign.global_m0_bound.max(campaign.global_step2_bound);
    let all = search::enumerate_solutions(search_n_max, bases.clone(), 2)?;
    let (trivial, solutions): (Vec<_>, Vec<_>) = all.iter().cloned().partition(|t| t.trivial);
    let expected: Vec<SolutionTuple> = expected_table()
        .into_iter()
        .filter(|t| bases.contains(&(t.b as u32)))
        .collect();
    let table = compare(&solutions, &expected);
    let full_range = bases == (2..=MAX_VERIFIED_BASE);
    let corollaries = if full_range { Some(corollaries()?) } else { None };
    let soundness = soundness(&c, &campaign, &all)?;
    let passed = table.passed()
        && corollaries.as_ref().is_none_or(|c| c.passed)
        && soundness.threshold_violations.is_empty()
        && soundness.corrected_window_violations.is_empty();
    Ok(PipelineReport {
        bases: summaries,
        global_m0_bound: campaign.global_m0_bound,
        global_gap_bound: campaign.global_gap_bound,
        global_step2_bound: campaign.global_step2_bound,
        search_n_max,
        solutions,
        trivial_count: trivial.len(),
        table,
        corollaries,
        soundness,
        passed,
    })
}

/// [`run_pipeline`] wrapped with its header, as JSON.
pub fn pipeline_json(config: &PipelineConfig) -> Result<String> {
    let report = run_pipeline(config)?;
    Ok(Report::new(config.header(), report).to_json())
}
