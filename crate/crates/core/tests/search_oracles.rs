use std::collections::BTreeSet;

mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use narayana::repdigit::{as_block_repdigit, as_repdigit, repdigit_value, to_base_digits};
use narayana::search::{
    block_repdigit_scan, enumerate_solutions, enumerate_solutions_unpruned, expected_table, mersenne_scan,
    single_term_repdigits, verify_against, verify_table1, SolutionTuple,
};

#[test]
fn enumerator_matches_digit_string_oracle() {
    let oracle = common::brute_force(100, 2..=100);
    let fast: BTreeSet<_> = enumerate_solutions(100, 2..=100, 2)
        .unwrap()
        .iter()
        .map(SolutionTuple::as_tuple)
        .collect();
    assert_eq!(fast, oracle);
}

#[test]
fn pruning_changes_nothing() {
    assert_eq!(
        enumerate_solutions(60, 2..=100, 2).unwrap(),
        enumerate_solutions_unpruned(60, 2..=100, 2).unwrap()
    );
}

#[test]
fn output_is_sorted_and_revalidates() {
    let s = enumerate_solutions(120, 2..=100, 2).unwrap();
    assert!(s.windows(2).all(|w| w[0].key() < w[1].key()));
    assert!(s.iter().all(|t| t.revalidate().unwrap()));
    assert!(s.iter().all(|t| t.trivial == (t.ell == 2)));
}

#[test]
fn expected_rows_revalidate() {
    let t = expected_table();
    assert_eq!(t.len(), 37);
    for row in &t {
        assert!(row.revalidate().unwrap(), "{:?}", row.as_tuple());
    }
    let big = narayana::sequence::narayana(26) + narayana::sequence::narayana(22);
    assert_eq!(big, repdigit_value(2, 72, 3).unwrap());
}

#[test]
fn table_verifies() {
    let r = verify_table1();
    assert!(r.passed());
    assert_eq!(r.ratio(), "37/37");
}

#[test]
fn perturbed_table_reports_one_missing_one_extra() {
    let mut expected = expected_table();
    expected[0] = SolutionTuple::new(6, 5, 3, 1, 5);
    let r = verify_against(&expected);
    assert_eq!(r.missing.len(), 1);
    assert_eq!(r.extra.len(), 1);
    assert_eq!(r.extra[0].as_tuple(), (6, 5, 3, 1, 2));
    assert!(!r.passed());
}

#[test]
fn single_term_examples() {
    assert_eq!(single_term_repdigits(280, 2..=100, 3).unwrap(), vec![(9, 3, 1, 3), (15, 3, 3, 6)]);
    assert!(single_term_repdigits(280, 10..=10, 2).unwrap().contains(&(14, 2, 8, 10)));
    assert!(single_term_repdigits(8, 2..=100, 3).unwrap().is_empty());
}

#[test]
fn mersenne_examples() {
    assert!(mersenne_scan(280, 3).is_empty());
    let l2 = mersenne_scan(280, 2);
    assert_eq!(l2.iter().map(|h| (h.n, h.ell, h.prime)).collect::<Vec<_>>(), vec![(5, 2, true)]);
    assert!(mersenne_scan(4, 2).is_empty());
}

#[test]
fn block_examples() {
    let one: Vec<u64> = block_repdigit_scan(280, 1, 2).unwrap().iter().map(|h| h.n).collect();
    assert_eq!(one, vec![14]);
    assert!(block_repdigit_scan(280, 2, 2).unwrap().is_empty());
}

#[test]
fn block_agrees_with_power_of_ten_base() {
    for m in 1..=3u32 {
        let base = 10u64.pow(m);
        for v in 1..=1_000_000u64 {
            let v = BigUint::from(v);
            let block = as_block_repdigit(&v, m).map(|(d, l)| (u64::try_from(&d).unwrap(), l));
            assert_eq!(block, as_repdigit(&v, base), "v = {v}, m = {m}");
        }
    }
}

proptest! {
    #[test]
    fn repdigit_round_trip(b in 2u64..200, a_frac in 0.0f64..1.0, ell in 2u32..25) {
        let a = 1 + ((b - 1) as f64 * a_frac) as u64 % (b - 1);
        let v = repdigit_value(a, b, ell).unwrap();
        prop_assert_eq!(as_repdigit(&v, b), Some((a, ell)));
    }

    #[test]
    fn digits_reconstruct(v in any::<u128>(), b in 2u64..1000) {
        let x = BigUint::from(v);
        let ds = to_base_digits(&x, b);
        prop_assert!(ds.iter().all(|&d| d < b));
        prop_assert!(ds[0] != 0 || ds.len() == 1);
        let back = ds.iter().fold(BigUint::from(0u32), |acc, &d| acc * b + d);
        prop_assert_eq!(back, x);
    }
}
