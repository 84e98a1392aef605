use minshift_core::estimators::{c1, c2, c3, c4, EstimatorConfig};
use minshift_core::Sample;
use proptest::prelude::*;

fn sample_strategy(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (min_len..200usize).prop_flat_map(|n| prop::collection::vec(0.01f64..1e4, n))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn dkw_shift_is_below_iterated_log_shift(v in sample_strategy(3)) {
        let s = Sample::new(v).unwrap();
        prop_assert!(c4(&s, &EstimatorConfig::default()).unwrap() <= c3(&s).unwrap());
    }

    #[test]
    fn iterated_log_shift_is_below_c2(v in sample_strategy(5)) {
        let s = Sample::new(v).unwrap();
        prop_assert!(c3(&s).unwrap() <= c2(&s).unwrap());
    }

    #[test]
    fn additive_estimators_are_translation_equivariant(v in sample_strategy(3), a in -1e3f64..1e3) {
        let s = Sample::new(v.clone()).unwrap();
        let t = Sample::new(v.iter().map(|x| x + a).collect()).unwrap();
        let cfg = EstimatorConfig::default();
        prop_assert!(close(c2(&t).unwrap(), c2(&s).unwrap() + a));
        prop_assert!(close(c3(&t).unwrap(), c3(&s).unwrap() + a));
        prop_assert!(close(c4(&t, &cfg).unwrap(), c4(&s, &cfg).unwrap() + a));
    }

    #[test]
    fn all_estimators_are_scale_equivariant(v in sample_strategy(3), b in 1e-3f64..1e3) {
        let s = Sample::new(v.clone()).unwrap();
        let t = Sample::new(v.iter().map(|x| x * b).collect()).unwrap();
        let cfg = EstimatorConfig::default();
        prop_assert!(close(c2(&t).unwrap(), b * c2(&s).unwrap()));
        prop_assert!(close(c3(&t).unwrap(), b * c3(&s).unwrap()));
        prop_assert!(close(c4(&t, &cfg).unwrap(), b * c4(&s, &cfg).unwrap()));
        if s.sd() > 0.0 {
            prop_assert!(close(c1(&t, &cfg).unwrap().value, b * c1(&s, &cfg).unwrap().value));
        }
    }

    #[test]
    fn estimates_never_exceed_the_minimum(v in sample_strategy(3)) {
        let s = Sample::new(v).unwrap();
        let cfg = EstimatorConfig::default();
        prop_assert!(c2(&s).unwrap() <= s.min());
        prop_assert!(c3(&s).unwrap() <= s.min());
        prop_assert!(c4(&s, &cfg).unwrap() <= s.min());
        if s.sd() > 0.0 {
            prop_assert!(c1(&s, &cfg).unwrap().value < s.min());
        }
    }
}

#[test]
fn c1_is_not_translation_equivariant() {
    let s = Sample::new(vec![4.0, 5.0, 6.0]).unwrap();
    let t = Sample::new(vec![104.0, 105.0, 106.0]).unwrap();
    let cfg = EstimatorConfig::default();
    let shifted = c1(&t, &cfg).unwrap().value;
    assert!((shifted - (c1(&s, &cfg).unwrap().value + 100.0)).abs() > 0.1);
}
