//! Oracles shared by the integration tests. Nothing here calls into the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// `N_0..=N_{n_max}` by the recurrence in `u128`; exact up to n = 230.
pub fn narayana_u128(n_max: usize) -> Vec<u128> {
    let mut v = vec![0u128, 1, 1];
    while v.len() <= n_max {
        let k = v.len();
        v.push(v[k - 1] + v[k - 3]);
    }
    v
}

/// Base-`b` digits of `x` as one byte each, most significant first (`b <= 256`).
pub fn digit_string(mut x: u128, b: u128) -> Vec<u8> {
    let mut s = Vec::new();
    while x > 0 {
        s.push((x % b) as u8);
        x /= b;
    }
    s.reverse();
    s
}

/// All `(n, m, l, a, b)` with `N_n + N_m` written in base `b` as `l >= 2` copies of one non-zero digit.
pub fn brute_force(n_max: usize, bases: std::ops::RangeInclusive<u128>) -> BTreeSet<(u64, u64, u32, u64, u64)> {
    let nv = narayana_u128(n_max);
    let mut out = BTreeSet::new();
    for n in 0..=n_max {
        for m in 0..=n {
            let s = nv[n] + nv[m];
            for b in bases.clone() {
                let ds = digit_string(s, b);
                if ds.len() >= 2 && ds[0] != 0 && ds.iter().all(|&c| c == ds[0]) {
                    out.insert((n as u64, m as u64, ds.len() as u32, ds[0] as u64, b as u64));
                }
            }
        }
    }
    out
}
