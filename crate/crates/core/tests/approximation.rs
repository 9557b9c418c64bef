use beta_median::{
    approx_median, approx_median_default, beta_mean, beta_median_exact, beta_mode, exact_median_special,
    gamma_median_approx, gamma_median_exact, BetaParams, Error, Offset, SolverConfig,
};
use num_rational::Ratio;
use proptest::prelude::*;

type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn params(a: f64, b: f64) -> BetaParams<f64> {
    BetaParams::new(a, b).unwrap()
}

#[test]
fn approx_median_examples() {
    let third = Offset::third();
    assert_eq!(approx_median(params(2.0, 2.0), third).unwrap(), 0.5);
    assert!((approx_median(params(2.0, 3.0), third).unwrap() - 5.0 / 13.0).abs() <= 1e-16);
    assert!((approx_median(params(2.0, 3.0), Offset::zero()).unwrap() - 0.4).abs() <= 1e-16);
}

#[test]
fn default_examples() {
    // (1 − 1/3)/(3 − 2/3) = (2/3)/(7/3)
    assert!((approx_median_default(params(1.0, 2.0)).unwrap() - 2.0 / 7.0).abs() <= 1e-16);
    assert_eq!(approx_median_default(params(7.0, 7.0)).unwrap(), 0.5);
    let approx = approx_median_default(params(2.0, 5.0)).unwrap();
    assert!((approx - 5.0 / 19.0).abs() <= 1e-16);
    let exact = beta_median_exact(params(2.0, 5.0), &SolverConfig::default()).unwrap();
    assert!(((approx - exact) / exact).abs() <= 0.01);
}

#[test]
fn exact_over_rationals() {
    let p = BetaParams::new(q(2, 1), q(3, 1)).unwrap();
    assert_eq!(approx_median_default(p).unwrap(), q(5, 13));
    assert_eq!(approx_median(p, Offset::zero()).unwrap(), q(2, 5));
    let p = BetaParams::new(q(1, 1), q(2, 1)).unwrap();
    assert_eq!(approx_median_default(p).unwrap(), q(2, 7));
    assert_eq!(approx_median(p, Offset::new(q(1, 2)).unwrap()).unwrap(), q(1, 4));
    assert_eq!(beta_mode(BetaParams::new(q(3, 1), q(2, 1)).unwrap()).unwrap(), q(2, 3));
    assert_eq!(
        beta_mean(BetaParams::new(q(1, 1000), q(999, 1000)).unwrap()),
        q(1, 1000)
    );
    assert_eq!(gamma_median_approx(q(10, 1)).unwrap(), q(29, 3));
}

#[test]
fn rational_symmetry_is_exact() {
    for a in 1..12i64 {
        for b in 1..12i64 {
            for d in [q(0, 1), q(1, 3), q(1, 2), q(9, 10)] {
                let (pa, pb) = (
                    BetaParams::new(q(a, 1), q(b, 1)).unwrap(),
                    BetaParams::new(q(b, 1), q(a, 1)).unwrap(),
                );
                let off = Offset::new(d).unwrap();
                let (x, y) = (approx_median(pa, off).unwrap(), approx_median(pb, off).unwrap());
                assert_eq!(x + y, q(1, 1));
            }
        }
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(
        approx_median(params(0.3, 5.0), Offset::third()),
        Err(Error::Domain { .. })
    ));
    assert!(approx_median(params(0.3, 5.0), Offset::new(0.25).unwrap()).is_ok());
    assert!(matches!(beta_mode(params(1.0, 2.0)), Err(Error::Domain { .. })));
    assert!(matches!(gamma_median_approx(1.0_f64 / 3.0), Err(Error::Domain { .. })));
    assert!(Offset::new(1.0).is_err());
    assert!(Offset::new(-0.1).is_err());
    assert!(BetaParams::new(0.0, 1.0).is_err());
    assert!(BetaParams::new(1.0, f64::INFINITY).is_err());
}

#[test]
fn third_is_nearest_double() {
    assert_eq!(Offset::<f64>::third().get(), 1.0 / 3.0);
    assert_ne!(Offset::<f64>::third().get(), 0.333);
}

#[test]
fn mean_and_mode_examples() {
    assert_eq!(beta_mean(params(1.0, 3.0)), 0.25);
    assert_eq!(beta_mean(params(5.0, 5.0)), 0.5);
    assert!((beta_mean(params(0.001, 0.999)) - 0.001).abs() <= 1e-18);
    assert_eq!(beta_mode(params(2.0, 2.0)).unwrap(), 0.5);
    assert!((beta_mode(params(3.0, 2.0)).unwrap() - 2.0 / 3.0).abs() <= 1e-16);
}

#[test]
fn special_cases() {
    let m = exact_median_special(params(3.0, 1.0)).unwrap();
    assert!((m - 0.7937005259840998).abs() <= 1e-15);
    assert_eq!(exact_median_special(params(1.0, 1.0)), Some(0.5));
    assert_eq!(exact_median_special(params(2.0, 3.0)), None);
    let m = exact_median_special(params(1.0, 4.0)).unwrap();
    assert!((m - (1.0 - 2f64.powf(-0.25))).abs() <= 1e-16);
}

#[test]
fn special_cases_agree_with_formula_at_equal_shapes() {
    for a in [0.5, 1.0, 2.0, 7.0, 1e3] {
        let special = exact_median_special(params(a, a)).unwrap();
        for d in [0.0, 0.1, 1.0 / 3.0, 0.45] {
            assert_eq!(approx_median(params(a, a), Offset::new(d).unwrap()).unwrap(), special);
        }
    }
}

#[test]
fn gamma_asymptote_examples() {
    let cfg = SolverConfig::default();
    assert!((gamma_median_approx(1.0_f64).unwrap() - 2.0 / 3.0).abs() <= 2e-16);
    let m1 = gamma_median_exact(1.0, &cfg).unwrap();
    assert!((m1 - std::f64::consts::LN_2).abs() <= 1e-14);
    let m10 = gamma_median_exact(10.0, &cfg).unwrap();
    assert!((gamma_median_approx(10.0_f64).unwrap() - m10).abs() < 0.01);
}

#[test]
fn signed_bias_on_both_sides_of_half() {
    let cfg = SolverConfig::default();
    for a in [1.0, 1.5, 2.0, 5.0, 20.0, 100.0] {
        for p in [0.01, 0.1, 0.3, 0.45, 0.499] {
            let low = params(a, a * (1.0 - p) / p);
            let high = low.swapped();
            let exact_low = beta_median_exact(low, &cfg).unwrap();
            let exact_high = beta_median_exact(high, &cfg).unwrap();
            assert!(approx_median_default(low).unwrap() <= exact_low + 1e-12, "a={a} p={p}");
            assert!(
                approx_median_default(high).unwrap() >= exact_high - 1e-12,
                "a={a} p={p}"
            );
        }
    }
}

fn shape() -> impl Strategy<Value = f64> {
    (-2.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn symmetry(a in shape(), b in shape(), d in 0.0f64..0.999) {
        prop_assume!(a.min(b) > d);
        let off = Offset::new(d).unwrap();
        let s = approx_median(params(a, b), off).unwrap() + approx_median(params(b, a), off).unwrap();
        prop_assert!((s - 1.0).abs() <= 1e-15, "sum {}", s);
    }

    #[test]
    fn decreasing_in_d(x in 1.001f64..1e3, y in 1.001f64..1e3, d1 in 0.0f64..0.999, d2 in 0.0f64..0.999) {
        prop_assume!(x != y && d1 != d2);
        let p = params(x.min(y), x.max(y));
        let (lo, hi) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
        let m_lo = approx_median(p, Offset::new(lo).unwrap()).unwrap();
        let m_hi = approx_median(p, Offset::new(hi).unwrap()).unwrap();
        prop_assert!(m_hi <= m_lo);
        let (mode, mean) = (beta_mode(p).unwrap(), beta_mean(p));
        prop_assert!(mode <= m_hi && m_lo <= mean);
    }
}
