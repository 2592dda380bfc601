//! Cross-module invariants.

use proptest::prelude::*;

use gammachar::characterization::{gamma_gof_test, pair_series_from_data};
use gammachar::geometry::{b_domain_contains, lambda_tilde, t1_forward, t1_inverse, t_from_lambda};
use gammachar::quadrature::{weighted_points, Weighting};
use gammachar::statistics::{degree_one_statistic, BaseFunction, OrderedSample};

fn positive_sample(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(|n| prop::collection::vec(0.01f64..100.0, n))
}

fn statistic() -> impl Strategy<Value = BaseFunction> {
    prop_oneof![Just(BaseFunction::range()), Just(BaseFunction::gini()), Just(BaseFunction::cv())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transform_round_trip(raw in positive_sample(3..=9)) {
        let s = OrderedSample::new(&raw).unwrap();
        prop_assume!(!s.is_degenerate() && s.sd() > 1e-9 * s.mean());
        let c = t1_forward(&s).unwrap();
        prop_assert!(b_domain_contains(s.n(), c.t.t()).unwrap());
        let back = t1_inverse(&c.t, c.w1, c.w2).unwrap();
        for (a, b) in s.values().iter().zip(back.values()) {
            prop_assert!((a - b).abs() <= 1e-10 * s.values()[s.n() - 1]);
        }
    }

    #[test]
    fn unit_profile_has_fixed_moments(raw in positive_sample(3..=9)) {
        let s = OrderedSample::new(&raw).unwrap();
        prop_assume!(!s.is_degenerate() && s.sd() > 1e-9 * s.mean());
        let n = s.n();
        let lambda = lambda_tilde(n, t1_forward(&s).unwrap().t.t());
        let sum: f64 = lambda.iter().sum();
        let sq: f64 = lambda.iter().map(|l| l * l).sum();
        prop_assert!(sum.abs() < 1e-9);
        prop_assert!((sq - (n as f64 - 1.0)).abs() < 1e-9);
        prop_assert!(lambda.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        let t = t_from_lambda(&lambda);
        prop_assert!(b_domain_contains(n, &t).unwrap());
    }

    #[test]
    fn quotient_is_scale_free(raw in positive_sample(3..=8), c in 0.001f64..1000.0, u in statistic()) {
        let s = OrderedSample::new(&raw).unwrap();
        prop_assume!(!s.is_degenerate());
        let scaled = s.scaled(c).unwrap();
        let q = degree_one_statistic(&u, &s).unwrap() / s.mean();
        let qc = degree_one_statistic(&u, &scaled).unwrap() / scaled.mean();
        prop_assert!((q - qc).abs() <= 1e-10 * q.max(1e-300));
    }

    #[test]
    fn grouping_keeps_every_complete_group(len in 12usize..200, n in 3usize..7) {
        let data: Vec<f64> = (0..len).map(|i| 1.0 + (i * 37 % 11) as f64).collect();
        prop_assume!(len / n >= 2);
        let p = pair_series_from_data(&data, &BaseFunction::range(), n, "x").unwrap();
        prop_assert_eq!(p.m, len / n);
        prop_assert!(p.pairs.iter().all(|&(m, v)| m > 0.0 && v >= 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gof_report_is_consistent(seed in any::<u64>(), alpha in 0.01f64..0.5) {
        let data: Vec<f64> = (0..120).map(|i| 0.5 + (((i as u64 * 2654435761) ^ seed) % 1000) as f64 / 100.0).collect();
        let r = gamma_gof_test(&data, &BaseFunction::gini(), 4, alpha, 99, seed).unwrap();
        prop_assert!(r.p_value > 0.0 && r.p_value <= 1.0);
        prop_assert_eq!(r.reject, r.p_value < alpha);
        prop_assert!(r.dcov >= 0.0);
        // p is a multiple of 1/(perms + 1)
        let k = r.p_value * 100.0;
        prop_assert!((k - k.round()).abs() < 1e-9);
    }

    #[test]
    fn quadrature_nodes_lie_in_domain(n in 3usize..10, seed in any::<u64>()) {
        for w in [Weighting::Lebesgue, Weighting::InverseSqrtG] {
            for p in weighted_points(n, w, 300, seed).unwrap() {
                prop_assert!(p.weight >= 0.0);
                prop_assert!(b_domain_contains(n, p.point.t()).unwrap());
            }
        }
    }
}
