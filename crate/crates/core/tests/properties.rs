use markov_gegenbauer::constant::{
    extremal_polynomial, sharp_constant, theorem_bound, trace_bound,
};
use markov_gegenbauer::gegenbauer::Lambda;
use markov_gegenbauer::matrices::{traces, Parity};
use markov_gegenbauer::quadrature::{oracle_constant_coefficient, rayleigh_sample};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = Lambda> {
    (-0.49f64..12.0).prop_map(|l| Lambda::new(l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bound_chain(n in 1usize..60, l in lambda()) {
        let c = sharp_constant(n, l).unwrap().sharp_constant;
        prop_assert!(c < theorem_bound(n, l));
        prop_assert!(c <= trace_bound(n, l) * (1.0 + 1e-12));
        prop_assert!(trace_bound(n, l) <= theorem_bound(n, l) * (1.0 + 1e-12));
    }

    #[test]
    fn constant_grows_with_degree(n in 1usize..50, l in lambda()) {
        let a = sharp_constant(n, l).unwrap();
        let b = sharp_constant(n + 1, l).unwrap();
        prop_assert!(a.sharp_constant < b.sharp_constant);
        prop_assert_eq!(a.branch, Parity::of(n));
    }

    #[test]
    fn coefficient_oracle_agrees(n in 1usize..30, l in lambda()) {
        let c = sharp_constant(n, l).unwrap().sharp_constant;
        let o = oracle_constant_coefficient(n, l).unwrap();
        prop_assert!((o - c).abs() <= 1e-10 * c);
    }

    #[test]
    fn trace_sums_match_closed_forms(m in 1usize..60, l in lambda()) {
        prop_assert!(traces(m, l).max_rel_error() <= 1e-12);
    }

    #[test]
    fn no_polynomial_beats_the_constant(
        l in lambda(),
        coeffs in prop::collection::vec(-1.0f64..1.0, 2..16),
    ) {
        prop_assume!(coeffs.iter().skip(1).any(|c| c.abs() > 1e-3));
        let n = coeffs.len() - 1;
        let c = sharp_constant(n, l).unwrap().sharp_constant;
        prop_assert!(rayleigh_sample(n, l, &coeffs) <= c * (1.0 + 1e-10));
    }

    #[test]
    fn extremal_polynomial_has_parity_and_attains(n in 1usize..25, l in lambda()) {
        let p = extremal_polynomial(n, l, &[]).unwrap();
        prop_assert_eq!(p.parity, Parity::of(n));
        prop_assert!(p.all_coefficients_positive());
        prop_assert!(p.parity_defect() <= 1e-10);
        prop_assert!((p.achieved_ratio - p.sharp_constant).abs() <= 1e-8 * p.sharp_constant);
    }
}
