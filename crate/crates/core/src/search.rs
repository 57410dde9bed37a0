//! Exhaustive search for `N_n + N_m = a (b^l - 1) / (b - 1)` and its corollaries.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repdigit::{as_block_repdigit, as_repdigit, repdigit_value};
use crate::sequence::{global_cache, narayana};

/// Largest base covered by the proved result.
pub const MAX_VERIFIED_BASE: u32 = 100;
/// Search bound on `n` that the reduction yields for bases `2..=100`.
pub const TABLE_N_MAX: u64 = 280;

/// One solution `(n, m, l, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SolutionTuple {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "l")]
    pub ell: u32,
    pub a: u64,
    pub b: u64,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub value: BigUint,
    /// `l == 2`
    pub trivial: bool,
}

impl SolutionTuple {
    pub fn new(n: u64, m: u64, ell: u32, a: u64, b: u64) -> Self {
        SolutionTuple {
            n,
            m,
            ell,
            a,
            b,
            value: narayana(n as usize) + narayana(m as usize),
            trivial: ell == 2,
        }
    }

    /// Canonical ordering key `(n, m, b, a, l)`.
    pub fn key(&self) -> (u64, u64, u64, u64, u32) {
        (self.n, self.m, self.b, self.a, self.ell)
    }

    /// Recomputes both sides exactly.
    pub fn revalidate(&self) -> Result<bool> {
        let lhs = narayana(self.n as usize) + narayana(self.m as usize);
        let rhs = repdigit_value(self.a, self.b, self.ell)?;
        Ok(self.m <= self.n && lhs == rhs && lhs == self.value)
    }

    pub fn as_tuple(&self) -> (u64, u64, u32, u64, u64) {
        (self.n, self.m, self.ell, self.a, self.b)
    }
}

/// All solutions with `l >= 3` for `n <= 280` and `2 <= b <= 100`, as `(n, m, l, a, b)`.
pub const EXPECTED_TABLE: [(u64, u64, u32, u64, u64); 37] = [
    (6, 5, 3, 1, 2),
    (7, 1, 3, 1, 2),
    (7, 2, 3, 1, 2),
    (7, 3, 3, 1, 2),
    (8, 6, 3, 1, 3),
    (8, 7, 4, 1, 2),
    (9, 0, 3, 1, 3),
    (9, 4, 4, 1, 2),
    (9, 9, 3, 2, 3),
    (10, 4, 3, 1, 4),
    (11, 5, 5, 1, 2),
    (11, 5, 3, 1, 5),
    (12, 1, 3, 2, 4),
    (12, 2, 3, 2, 4),
    (12, 3, 3, 2, 4),
    (12, 4, 3, 1, 6),
    (13, 4, 3, 2, 5),
    (13, 5, 6, 1, 2),
    (13, 5, 3, 3, 4),
    (13, 9, 3, 1, 8),
    (14, 5, 3, 1, 9),
    (14, 12, 3, 3, 6),
    (15, 0, 3, 3, 6),
    (15, 6, 3, 1, 11),
    (15, 11, 3, 1, 12),
    (15, 12, 4, 2, 4),
    (17, 14, 3, 5, 8),
    (19, 7, 3, 1, 24),
    (19, 10, 3, 2, 17),
    (21, 5, 3, 7, 13),
    (21, 15, 3, 1, 37),
    (21, 17, 5, 1, 6),
    (21, 18, 3, 4, 20),
    (26, 20, 3, 9, 32),
    (26, 22, 3, 2, 72),
    (28, 13, 3, 20, 30),
    (30, 18, 3, 11, 60),
];

/// The expected table as sorted [`SolutionTuple`]s.
pub fn expected_table() -> Vec<SolutionTuple> {
    canonical(EXPECTED_TABLE.iter().map(|&(n, m, l, a, b)| SolutionTuple::new(n, m, l, a, b)))
}

fn canonical(items: impl IntoIterator<Item = SolutionTuple>) -> Vec<SolutionTuple> {
    let mut v: Vec<SolutionTuple> = items.into_iter().collect();
    v.sort_by_key(|t| t.key());
    v.dedup();
    v
}

fn check_args(n_max: u64, bases: &RangeInclusive<u32>, ell_min: u32) -> Result<()> {
    if n_max < 1 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if *bases.start() < 2 {
        return Err(Error::Precondition(format!("bases must start at 2 or above, got {}", bases.start())));
    }
    if ell_min < 2 {
        return Err(Error::Precondition(format!("l_min must be at least 2, got {ell_min}")));
    }
    Ok(())
}

fn scan(n_max: u64, bases: RangeInclusive<u32>, ell_min: u32, m_only_zero: bool, prune: bool) -> Vec<SolutionTuple> {
    let cache = global_cache();
    cache.extend_to(n_max as usize);
    let found: Vec<SolutionTuple> = (0..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let bases = bases.clone();
            let ms = if m_only_zero { 0..=0 } else { 0..=n };
            cache.with_terms(n as usize, |terms| {
                let mut out = Vec::new();
                for m in ms {
                    let s = &terms[n as usize] + &terms[m as usize];
                    // a repdigit with l >= 2 in base b exceeds b
                    let limit = if prune { s.to_u64().unwrap_or(u64::MAX) } else { u64::MAX };
                    for b in bases.clone() {
                        if b as u64 >= limit {
                            break;
                        }
                        if let Some((a, ell)) = as_repdigit(&s, b as u64) {
                            if ell >= ell_min {
                                out.push(SolutionTuple {
                                    n,
                                    m,
                                    ell,
                                    a,
                                    b: b as u64,
                                    value: s.clone(),
                                    trivial: ell == 2,
                                });
                            }
                        }
                    }
                }
                out
            })
        })
        .collect();
    canonical(found)
}

/// Every `(n, m, l, a, b)` with `0 <= m <= n <= n_max`, `b` in `bases` and `l >= l_min`,
/// sorted by `(n, m, b, a, l)`.
pub fn enumerate_solutions(n_max: u64, bases: RangeInclusive<u32>, ell_min: u32) -> Result<Vec<SolutionTuple>> {
    check_args(n_max, &bases, ell_min)?;
    Ok(scan(n_max, bases, ell_min, false, true))
}

/// Same as [`enumerate_solutions`] but tests every base against every sum.
pub fn enumerate_solutions_unpruned(n_max: u64, bases: RangeInclusive<u32>, ell_min: u32) -> Result<Vec<SolutionTuple>> {
    check_args(n_max, &bases, ell_min)?;
    Ok(scan(n_max, bases, ell_min, false, false))
}

/// Result of a set comparison against an expected list.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub expected: usize,
    pub found: usize,
    pub matched: usize,
    pub missing: Vec<SolutionTuple>,
    pub extra: Vec<SolutionTuple>,
    /// Expected tuples whose arithmetic does not hold.
    pub invalid: Vec<SolutionTuple>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.invalid.is_empty()
    }

    /// `"matched/expected"`
    pub fn ratio(&self) -> String {
        format!("{}/{}", self.matched, self.expected)
    }
}

/// Compares `found` with `expected` as sets.
pub fn compare(found: &[SolutionTuple], expected: &[SolutionTuple]) -> VerificationReport {
    let key = |t: &SolutionTuple| t.as_tuple();
    let f: BTreeSet<_> = found.iter().map(key).collect();
    let e: BTreeSet<_> = expected.iter().map(key).collect();
    let missing = expected.iter().filter(|t| !f.contains(&key(t))).cloned().collect();
    let extra = found.iter().filter(|t| !e.contains(&key(t))).cloned().collect();
    let invalid = expected
        .iter()
        .filter(|t| !t.revalidate().unwrap_or(false))
        .cloned()
        .collect();
    VerificationReport {
        expected: e.len(),
        found: f.len(),
        matched: f.intersection(&e).count(),
        missing,
        extra,
        invalid,
    }
}

/// Searches `n <= 280`, `2 <= b <= 100`, `l >= 3` and compares with `expected`.
pub fn verify_against(expected: &[SolutionTuple]) -> VerificationReport {
    let found = scan(TABLE_N_MAX, 2..=MAX_VERIFIED_BASE, 3, false, true);
    compare(&found, expected)
}

/// [`verify_against`] the embedded table.
pub fn verify_table1() -> VerificationReport {
    verify_against(&expected_table())
}

/// Single-term repdigits `N_n = a (b^l - 1)/(b - 1)` as `(n, l, a, b)`.
pub fn single_term_repdigits(n_max: u64, bases: RangeInclusive<u32>, ell_min: u32) -> Result<Vec<(u64, u32, u64, u64)>> {
    check_args(n_max, &bases, ell_min)?;
    Ok(scan(n_max, bases, ell_min, true, true)
        .into_iter()
        .map(|t| (t.n, t.ell, t.a, t.b))
        .collect())
}

/// `N_n = 2^l - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MersenneHit {
    pub n: u64,
    #[serde(rename = "l")]
    pub ell: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub value: BigUint,
    pub prime: bool,
}

/// Lucas–Lehmer test for `2^p - 1`.
pub fn mersenne_is_prime(p: u32) -> bool {
    match p {
        0 | 1 => false,
        2 => true,
        _ if !is_small_prime(p) => false,
        _ => {
            let m = (BigUint::one() << p) - BigUint::one();
            let two = BigUint::from(2u32);
            let mut s = BigUint::from(4u32);
            for _ in 0..p - 2 {
                s = (&s * &s + &m - &two) % &m;
            }
            s.is_zero()
        }
    }
}

fn is_small_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Every `n <= n_max` with `N_n = 2^l - 1` for some `l >= l_min`.
pub fn mersenne_scan(n_max: u64, ell_min: u32) -> Vec<MersenneHit> {
    (0..=n_max)
        .filter_map(|n| {
            let v = narayana(n as usize);
            let plus = &v + 1u32;
            // 2^l - 1 has exactly l one-bits and l >= 1
            if v.is_zero() || plus.count_ones() != 1 {
                return None;
            }
            let ell = v.bits() as u32;
            (ell >= ell_min).then(|| MersenneHit {
                n,
                ell,
                value: v,
                prime: mersenne_is_prime(ell),
            })
        })
        .collect()
}

/// `N_n` written as `length` copies of an `m`-digit block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockHit {
    pub n: u64,
    pub block_size: u32,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub block: BigUint,
    pub length: u32,
}

/// Every `n <= n_max` whose `N_n` is an `m`-block repdigit of length `>= min_length`.
pub fn block_repdigit_scan(n_max: u64, m: u32, min_length: u32) -> Result<Vec<BlockHit>> {
    if m < 1 || min_length < 2 {
        return Err(Error::Precondition("needs m >= 1 and min_length >= 2".into()));
    }
    let cache = global_cache();
    cache.extend_to(n_max as usize);
    Ok(cache.with_terms(n_max as usize, |terms| {
        terms
            .par_iter()
            .enumerate()
            .filter_map(|(n, v)| {
                let (block, length) = as_block_repdigit(v, m)?;
                (length >= min_length).then_some(BlockHit {
                    n: n as u64,
                    block_size: m,
                    block,
                    length,
                })
            })
            .collect()
    }))
}

/// Block-repdigit scan beyond the proved range. Hits here would be counterexamples
/// to an open statement; an empty result is evidence only.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureEvidence {
    pub label: &'static str,
    pub n_max: u64,
    pub block_sizes: Vec<u32>,
    pub hits: Vec<BlockHit>,
}

pub fn conjecture_evidence(n_max: u64, block_sizes: RangeInclusive<u32>) -> Result<ConjectureEvidence> {
    let mut hits = Vec::new();
    for m in block_sizes.clone() {
        hits.extend(block_repdigit_scan(n_max, m, 2)?);
    }
    Ok(ConjectureEvidence {
        label: "evidence",
        n_max,
        block_sizes: block_sizes.collect(),
        hits,
    })
}
