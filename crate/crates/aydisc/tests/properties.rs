mod common;

use common::*;
use proptest::prelude::*;

// Full case counts run in the acceptance gate; these are quicker passes.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn field_axioms_hold((x, y, z) in triples()) {
        field_axioms(&x, &y, &z)?;
    }

    #[test]
    fn factorization_agrees_with_oracle(p in poly_strategy()) {
        factorization_matches_oracle(&p)?;
    }

    #[test]
    fn products_of_two_factors_are_reducible(a in poly_of_degree(1..=2), b in poly_of_degree(1..=2)) {
        product_is_reducible(&a, &b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_round_trip(case in round_trip_cases()) {
        round_trip(&case)?;
    }

    #[test]
    fn projective_invariance_under_sl2(a in sl2(), which in 0usize..2) {
        projective_invariance(&a, which)?;
    }
}

#[test]
fn oracle_sanity() {
    use aydisc::RationalPolynomial as P;
    assert!(!oracle_is_irreducible(&P::from_ints(&[1, 0, 1, 0, 1])));
    assert!(oracle_is_irreducible(&P::from_ints(&[-2, 0, 0, 0, 1])));
    assert!(!oracle_is_irreducible(&P::from_ints(&[4, 0, 0, 0, 1])));
    assert!(!oracle_is_irreducible(&P::from_ints(&[1, 0, 2, 0, 1])));
}
