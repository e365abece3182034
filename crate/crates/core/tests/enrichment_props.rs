use efem::enrichment::{gamma_from_lambda, EnrichmentFunction, Side};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-10.0f64..10.0, 1e-3f64..2.0, 0.01f64..0.99, -3.0f64..3.0)
        .prop_map(|(xk, h, t, g)| (xk, xk + h, xk + t * h, g * h))
        .prop_filter("away from degeneracy", |&(xk, xk1, a, g)| {
            (a - xk1 - g).abs() > 1e-6 * (xk1 - xk) && a > xk && a < xk1
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jump_identity((xk, xk1, alpha, gamma) in config()) {
        let psi = EnrichmentFunction::new(3, xk, xk1, alpha, gamma).unwrap();
        let slope_jump = psi.eval(alpha, Side::Right).1 - psi.eval(alpha, Side::Left).1;
        let jump = psi.eval(alpha, Side::Right).0 - psi.eval(alpha, Side::Left).0;
        let expected = (alpha - xk1) / (alpha - xk1 - gamma);
        prop_assert!((slope_jump - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        prop_assert!(
            (jump - gamma * slope_jump).abs() <= 1e-13 * (1.0 + gamma.abs()) * slope_jump.abs(),
            "jump {} gamma*slope {}", jump, gamma * slope_jump
        );
        prop_assert!(psi.m1().abs() < 1.0);
        prop_assert!(psi.m2().is_finite());
        prop_assert_eq!(psi.eval(xk, Side::Right).0, 0.0);
        prop_assert_eq!(psi.eval(xk1, Side::Left).0, 0.0);
    }

    #[test]
    fn zero_gamma_is_the_continuous_hat((xk, xk1, alpha, _g) in config()) {
        let psi = EnrichmentFunction::new(0, xk, xk1, alpha, 0.0).unwrap();
        prop_assert!((psi.slope_jump() - 1.0).abs() <= 1e-14);
        prop_assert!(psi.jump().abs() <= 1e-14 * (xk1 - xk).max(1.0));
        let h = xk1 - xk;
        for i in 0..100 {
            let x = xk + h * (i as f64 + 0.5) / 100.0;
            let continuous = if x < alpha {
                (alpha - xk1) * (x - xk) / h
            } else {
                (alpha - xk) * (x - xk1) / h
            };
            let side = if x < alpha { Side::Left } else { Side::Right };
            prop_assert!((psi.eval(x, side).0 - continuous).abs() <= 1e-14 * h.max(1.0));
        }
    }
}

#[test]
fn reference_values() {
    let g = gamma_from_lambda(1.0 / 243.0, 1.0, 1.35).unwrap();
    assert!((g - -1.587302e-2).abs() < 1e-8);
    assert!(gamma_from_lambda(1.0, 2.0, 2.0).is_err());
    assert!(gamma_from_lambda(1.0, -1.0, 2.0).is_err());

    let psi = EnrichmentFunction::new(0, 0.0, 1.0, 0.5, 0.0).unwrap();
    assert_eq!((psi.m1(), psi.m2()), (-0.5, 0.5));

    let psi = EnrichmentFunction::new(0, 0.0, 1.0, 0.5, 0.25).unwrap();
    assert!((psi.m2() - 1.0 / 6.0).abs() < 1e-15);
    assert!((psi.jump() - 1.0 / 6.0).abs() < 1e-15);

    let err = EnrichmentFunction::new(0, 0.0, 1.0, 0.5, -0.5).unwrap_err();
    assert!(err.to_string().contains("change mesh size"));

    // Problem 1 at h = 1/8 sits close to the degenerate denominator
    let psi = EnrichmentFunction::new(0, 0.0, 0.125, 1.0 / 9.0, g).unwrap();
    assert!((psi.m2() - -7.1).abs() < 0.1, "m2 = {}", psi.m2());
}
