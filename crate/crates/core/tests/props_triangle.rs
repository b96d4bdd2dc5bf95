use probnorm::testkit::{breakpoint_sums, gen_stepdf, off_breakpoint_points, oracle_inf_conv, oracle_sup_conv, OracleConfig};
use probnorm::{tau_inf_conv, tau_sup_conv, StepDF, TNormKind};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = TNormKind> {
    prop::sample::select(TNormKind::ALL.to_vec())
}

fn lattice_df() -> impl Strategy<Value = StepDF> {
    (any::<u64>(), any::<bool>()).prop_map(|(s, p)| gen_stepdf(s, 4, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tnorm_axioms(k in kind(), a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0) {
        prop_assert_eq!(k.apply(a, 1.0), a);
        prop_assert_eq!(k.apply(a, b), k.apply(b, a));
        prop_assert!(k.apply(a, b.min(c)) <= k.apply(a, b.max(c)));
        let lhs = k.apply(k.apply(a, b), c);
        let rhs = k.apply(a, k.apply(b, c));
        prop_assert!((lhs - rhs).abs() <= 1e-15);
        prop_assert!((k.apply_dual(a, b) - (1.0 - k.apply(1.0 - a, 1.0 - b))).abs() <= 1e-15);
    }

    #[test]
    fn unit_steps_add(k in kind(), a in 0u32..=160, b in 0u32..=160) {
        let (a, b) = (a as f64 / 16.0, b as f64 / 16.0);
        let (ha, hb) = (StepDF::unit_step(a).unwrap(), StepDF::unit_step(b).unwrap());
        let hab = StepDF::unit_step(a + b).unwrap();
        prop_assert_eq!(tau_sup_conv(k, &ha, &hb), hab.clone());
        prop_assert_eq!(tau_inf_conv(k, &ha, &hb), hab);
    }

    #[test]
    fn h0_is_the_unit(k in kind(), f in lattice_df()) {
        let h0 = StepDF::unit_step(0.0).unwrap();
        prop_assert_eq!(tau_sup_conv(k, &f, &h0), f.clone());
        prop_assert_eq!(tau_inf_conv(k, &h0, &f), f);
    }

    #[test]
    fn commutative_and_associative(k in kind(), f in lattice_df(), g in lattice_df(), h in lattice_df()) {
        prop_assert_eq!(tau_sup_conv(k, &f, &g), tau_sup_conv(k, &g, &f));
        let l = tau_sup_conv(k, &tau_sup_conv(k, &f, &g), &h);
        let r = tau_sup_conv(k, &f, &tau_sup_conv(k, &g, &h));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sup_conv_dominates_inf_conv_under_min(f in lattice_df(), g in lattice_df()) {
        // τ_M is the largest triangle function of its kind and τ_{M*} ≤ τ_M
        let sup = tau_sup_conv(TNormKind::Min, &f, &g);
        for k in TNormKind::ALL {
            prop_assert!(tau_sup_conv(k, &f, &g).dominated_by(&sup));
        }
        prop_assert!(tau_inf_conv(TNormKind::Min, &f, &g).dominated_by(&sup));
    }

    #[test]
    fn hat_additivity(f in lattice_df(), g in lattice_df()) {
        let lhs = tau_sup_conv(TNormKind::Min, &f, &g).quasi_inverse();
        prop_assert_eq!(lhs, f.quasi_inverse().add(&g.quasi_inverse()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn convolutions_match_oracles(k in kind(), seed in any::<u64>()) {
        let f = gen_stepdf(seed, 4, true);
        let g = gen_stepdf(seed ^ 0xFF, 4, seed % 2 == 0);
        let cfg = OracleConfig::with_step(1e-3);
        let (sup, inf) = (tau_sup_conv(k, &f, &g), tau_inf_conv(k, &f, &g));
        for x in off_breakpoint_points(seed, 10, 21.0, &breakpoint_sums(&f, &g), 2e-3) {
            prop_assert_eq!(sup.eval(x), oracle_sup_conv(k, &f, &g, x, &cfg));
            prop_assert_eq!(inf.eval(x), oracle_inf_conv(k, &f, &g, x, &cfg));
        }
    }
}
