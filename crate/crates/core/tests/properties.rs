//! Randomized invariants of the algebra, model and attachment layers.

mod support;

use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn graded_commutativity_and_associativity(
        p in 2u32..=8, q in 2u32..=8, r in 2u32..=8,
        sx in seeds(), sy in seeds(), sz in seeds(),
    ) {
        support::graded_commutativity_and_associativity((p, q, r), &sx, &sy, &sz)?;
    }

    #[test]
    fn printed_elements_parse_back(p in 2u32..=9, sx in seeds()) {
        support::printed_elements_parse_back(p, &sx)?;
    }

    #[test]
    fn models_are_minimal_and_quasi_isomorphic(s in shape()) {
        support::models_are_minimal_and_quasi_isomorphic(&s)?;
    }

    #[test]
    fn leibniz_rule(s in shape(), pq in degree_pair(), sx in seeds(), sy in seeds()) {
        support::leibniz_rule(&s, pq, &sx, &sy)?;
    }

    #[test]
    fn class_products_ignore_representatives(
        s in shape(), pq in degree_pair(),
        pick in (any::<usize>(), any::<usize>()), bx in seeds(), by in seeds(),
    ) {
        support::class_products_ignore_representatives(&s, pq, pick, &bx, &by)?;
    }

    #[test]
    fn standardize_undoes_perturbations(s in shape(), pick in any::<usize>(), fs in seeds(), c in 1i64..=3) {
        support::standardize_undoes_perturbations(&s, pick, &fs, c)?;
    }

    #[test]
    fn u_class_detects_stage_zero_support(s in shape(), n in 4u32..=5, vals in prop::collection::vec(-2i64..=2, 1..6)) {
        support::u_class_detects_stage_zero_support(&s, n, &vals)?;
    }

    #[test]
    fn verdict_ignores_scaling(
        s in shape(), n in 4u32..=5, vals in prop::collection::vec(-2i64..=2, 1..6), c in nonzero_ratio(),
    ) {
        support::verdict_ignores_scaling(&s, n, &vals, &c)?;
    }
}
