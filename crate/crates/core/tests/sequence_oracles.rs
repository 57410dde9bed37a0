mod common;

use num_bigint::BigUint;

use narayana::highprec::{AlgebraicConstants, Precision};
use narayana::sequence::{check_growth_window, narayana, narayana_via_binet, SequenceCache};

#[test]
fn recurrence_matches_u128_oracle() {
    let oracle = common::narayana_u128(230);
    for (n, &want) in oracle.iter().enumerate() {
        assert_eq!(narayana(n), BigUint::from(want), "n = {n}");
    }
}

#[test]
fn oeis_prefix() {
    let want = [0u32, 1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60, 88, 129, 189, 277, 406, 595];
    let got: Vec<BigUint> = SequenceCache::new().range(0, 19).into_iter().map(|v| v.value).collect();
    assert_eq!(got, want.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>());
}

#[test]
fn binet_matches_recurrence_to_500() {
    for n in 1..=500 {
        assert_eq!(narayana_via_binet(n, Precision::DEFAULT).unwrap(), narayana(n), "n = {n}");
    }
}

#[test]
fn growth_window_holds_as_observed() {
    // alpha^(n-2) <= N_n only for n in {1, 2}; N_n / alpha^(n-2) tends to C alpha^4 < 1
    let c = AlgebraicConstants::cached(Precision::DEFAULT).unwrap();
    let mut lower_holds = Vec::new();
    for n in 1..=500 {
        let g = check_growth_window(&c, n).unwrap();
        assert_eq!(g.upper_holds, Some(true), "N_n <= alpha^(n-1) fails at n = {n}");
        match g.lower_holds {
            Some(true) => lower_holds.push(n),
            Some(false) => {}
            None => panic!("undecided at n = {n}"),
        }
    }
    assert_eq!(lower_holds, vec![1, 2]);
}

#[test]
fn shifted_lower_bound_holds() {
    // alpha^(n-3) <= N_n for every n >= 1
    let c = AlgebraicConstants::cached(Precision::DEFAULT).unwrap();
    for n in 1..=500usize {
        let bound = c.alpha_pow(n as i64 - 3);
        let v = num_bigint::BigInt::from(narayana(n));
        assert!(bound.certainly_le(&narayana::highprec::RealEnclosure::from_integer(v, c.precision)), "n = {n}");
    }
}
