use probnorm::testkit::{gen_stepdf, scan_eval};
use probnorm::{levy_metric, StepDF};
use proptest::prelude::*;

/// Step d.f.'s with arbitrary (non-dyadic) breakpoints and values.
fn arb_stepdf() -> impl Strategy<Value = StepDF> {
    (1usize..6).prop_flat_map(|k| {
        (
            prop::collection::vec(0.0f64..20.0, k),
            prop::collection::vec(0.0f64..=1.0, k),
            any::<bool>(),
        )
            .prop_map(|(mut b, mut v, proper)| {
                b.sort_by(f64::total_cmp);
                b.dedup();
                v.truncate(b.len());
                v.sort_by(f64::total_cmp);
                if proper {
                    *v.last_mut().unwrap() = 1.0;
                }
                v.insert(0, 0.0);
                StepDF::new(b, v).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn eval_matches_linear_scan(f in arb_stepdf(), x in -1.0f64..25.0) {
        prop_assert_eq!(f.eval(x), scan_eval(&f, x));
    }

    #[test]
    fn quasi_inverse_round_trips(f in arb_stepdf()) {
        prop_assert_eq!(f.quasi_inverse().reconstruct(), f);
    }

    #[test]
    fn quasi_inverse_is_injective(f in arb_stepdf(), g in arb_stepdf()) {
        prop_assert_eq!(f == g, f.quasi_inverse() == g.quasi_inverse());
    }

    #[test]
    fn order_reversal(f in arb_stepdf(), g in arb_stepdf()) {
        let upper = f.pointwise_max(&g);
        prop_assert!(f.dominated_by(&upper));
        prop_assert!(f.quasi_inverse().dominates(&upper.quasi_inverse()));
    }

    #[test]
    fn hat_scaling_exact_on_lattice(seed in any::<u64>(), k in 0usize..3) {
        let h = [0.5, 2.0, 7.0][k];
        let f = gen_stepdf(seed, 6, true);
        prop_assert_eq!(f.scale(h).unwrap().quasi_inverse(), f.quasi_inverse().scale(h).unwrap());
    }

    #[test]
    fn levy_metric_axioms(f in arb_stepdf(), g in arb_stepdf(), k in arb_stepdf()) {
        let fg = levy_metric(&f, &g).value;
        prop_assert!(levy_metric(&f, &f).value <= 1e-9);
        prop_assert!((0.0..=1.0).contains(&fg));
        prop_assert_eq!(fg, levy_metric(&g, &f).value);
        let fk = levy_metric(&f, &k).value;
        let kg = levy_metric(&k, &g).value;
        prop_assert!(fg <= fk + kg + 2e-9, "{} > {} + {}", fg, fk, kg);
    }

    #[test]
    fn levy_of_unit_steps(a in 0.0f64..3.0) {
        let d = levy_metric(&StepDF::unit_step(0.0).unwrap(), &StepDF::unit_step(a).unwrap()).value;
        prop_assert!((d - a.min(1.0)).abs() <= 1e-9);
    }
}
