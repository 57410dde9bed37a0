use num_bigint::{BigInt, BigUint};

use narayana::bounds::{log_crossover, search_bound, LOG_CROSSOVER_N};
use narayana::highprec::{AlgebraicConstants, Precision, RealEnclosure};
use narayana::reduction::{
    coefficient_checks, dujella_petho, run_campaign, z1, z2, z_bound_general, z_bound_m0, ReductionInstance,
};
use narayana::Error;

fn p60() -> Precision {
    Precision::digits(60)
}

fn ln(k: u32, p: Precision) -> RealEnclosure {
    narayana::highprec::ln_integer(&BigUint::from(k), p).unwrap()
}

#[test]
fn crossover_starts_at_five() {
    assert_eq!(log_crossover(4, p60()), Some(false));
    for n in LOG_CROSSOVER_N..2000 {
        assert_eq!(log_crossover(n, p60()), Some(true), "n = {n}");
    }
}

#[test]
fn rounded_coefficients_dominate_exact_ones() {
    let c = AlgebraicConstants::cached(p60()).unwrap();
    let checks = coefficient_checks(&c).unwrap();
    let exact: Vec<f64> = checks.iter().map(|k| k.exact.to_f64()).collect();
    assert!((exact[0] - 31.393).abs() < 1e-3);
    assert!((exact[1] - 15.697).abs() < 1e-3);
    assert!((exact[2] - 26.161).abs() < 1e-3);
    for k in &checks {
        assert!(k.exact.certainly_lt_integer(&BigInt::from(k.rounded)), "{}", k.name);
    }
}

#[test]
fn z_bounds_examples() {
    let c = AlgebraicConstants::cached(p60()).unwrap();
    assert!((z_bound_m0(&c, 7).unwrap().to_f64() - 0.82629).abs() < 1e-4);
    assert!((z_bound_general(&c, 11, 1).unwrap().to_f64() - 0.131245).abs() < 1e-5);
    // m = 0 goes through z_bound_m0
    assert!(z_bound_general(&c, 7, 0).is_err());
    assert!(z_bound_general(&c, 8, 1).unwrap().to_f64() < 0.5);
}

#[test]
fn linear_forms_do_not_vanish_on_solutions() {
    let c = AlgebraicConstants::cached(p60()).unwrap();
    for (n, m, ell, a, b) in [(9u64, 0u64, 3u32, 1u32, 3u32), (15, 0, 3, 3, 6), (21, 17, 5, 1, 6), (13, 5, 6, 1, 2)] {
        let z = if m == 0 { z1(&c, n, ell, a, b) } else { z2(&c, n, m, ell, a, b) }.unwrap();
        assert!(!z.contains_zero(), "{:?}", (n, m, ell, a, b));
        // small, as the inequalities predict
        assert!(z.abs().to_f64() < 32.0 * c.alpha.to_f64().powi(-(n as i32 - m as i32)));
    }
}

#[test]
fn bounds_hold_for_every_base() {
    let c = AlgebraicConstants::cached(p60()).unwrap();
    for b in 2..=100 {
        let r = search_bound(&c, b).unwrap();
        assert!(r.coeff_lambda1.to_f64() <= 2e13);
        assert!(r.coeff_lambda2.to_f64() <= 7.3e26);
    }
    let r100 = search_bound(&c, 100).unwrap();
    assert!((r100.m_b.to_f64() / 1.3463e35 - 1.0).abs() < 1e-3);
    let r2 = search_bound(&c, 2).unwrap();
    assert!((r2.m_b.to_f64() / 1.04002e31 - 1.0).abs() < 1e-4);
}

/// Brute-force check of the reduction statement on a small instance.
#[test]
fn reduction_threshold_is_sound_on_small_instance() {
    let p = p60();
    let gamma = ln(3, p).div(&ln(2, p)).unwrap();
    let mu = ln(5, p).div(&ln(2, p)).unwrap();
    let inst = ReductionInstance {
        gamma_hat: gamma.clone(),
        mu_hat: mu.clone(),
        a_coeff: RealEnclosure::from_integer(2, p),
        b_base: RealEnclosure::from_integer(2, p),
        m_bound: BigUint::from(2000u32),
    };
    let out = dujella_petho(&inst).unwrap();
    assert!(out.convergent.q > BigInt::from(12_000));
    assert!(out.epsilon.is_positive());
    let w = out.w_threshold as i32;
    // no u <= M gives |u gamma - v + mu| < 2 * 2^-w for any v
    let limit = 2.0 * 2f64.powi(-w);
    for u in 1..=2000i64 {
        let x = gamma.mul_int(&BigInt::from(u)).add(&mu);
        let d = x.nearest_int_distance().unwrap();
        assert!(d.lower_f64() >= limit, "u = {u}");
    }
    // and w is the least integer with 2^w >= 2q/eps
    let q = out.convergent.q.to_string().parse::<f64>().unwrap();
    let exact = (2.0 * q / out.epsilon.lower_f64()).log2();
    assert!(w as f64 >= exact && (w as f64) < exact + 1.0 + 1e-9);
}

#[test]
fn collapsed_gamma_is_rejected() {
    let p = p60();
    let inst = ReductionInstance {
        gamma_hat: RealEnclosure::from_ratio(3, 2, p).unwrap(),
        mu_hat: RealEnclosure::from_ratio(1, 3, p).unwrap(),
        a_coeff: RealEnclosure::from_integer(2, p),
        b_base: RealEnclosure::from_integer(2, p),
        m_bound: BigUint::from(10u32),
    };
    assert!(matches!(dujella_petho(&inst), Err(Error::CollapsedRational(_))));
}

#[test]
fn campaign_small_bases() {
    let s = run_campaign(2..=3, Precision::DEFAULT).unwrap();
    let b2 = s.base(2).unwrap();
    assert_eq!((b2.step1_m0_bound, b2.gap_bound, b2.step2_bound), (206, 204, 224));
    let b3 = s.base(3).unwrap();
    assert_eq!((b3.step1_m0_bound, b3.gap_bound, b3.step2_bound), (217, 215, 227));
    // one step-1 case per digit, one step-2 row per digit covering every gap
    assert_eq!(b3.step1.len(), 2);
    assert_eq!(b3.step2_thresholds[0].len() as u64, b3.gap_bound + 1);
}

#[test]
fn campaign_is_stable_under_precision() {
    let lo = run_campaign(7..=9, Precision::digits(120)).unwrap();
    let hi = run_campaign(7..=9, Precision::digits(300)).unwrap();
    for (a, b) in lo.bases.iter().zip(&hi.bases) {
        assert_eq!(
            (a.step1_m0_bound, a.gap_bound, a.step2_bound),
            (b.step1_m0_bound, b.gap_bound, b.step2_bound)
        );
    }
}
