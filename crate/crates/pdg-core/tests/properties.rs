//! Randomized property tests for the algebraic plumbing.

use num_bigint::BigInt;
use proptest::prelude::*;

use pdg_core::spectral::{char_poly, min_poly, DensePoly, FactoredPoly};
use pdg_core::{canon, structure};

fn arb_poly() -> impl Strategy<Value = DensePoly> {
    prop::collection::vec(-9i64..=9, 1..=8)
        .prop_map(|v| DensePoly::from_coeffs(v.into_iter().map(BigInt::from).collect()))
}

proptest! {
    // Exact division inverts multiplication by a monic factor.
    #[test]
    fn division_inverts_multiplication(a in arb_poly(), r in 1u64..=6, h in 0u64..=4) {
        let monic = FactoredPoly { lambda_power: h, cycle_factors: vec![(r, 1)] }.expand();
        let product = a.mul(&monic);
        if a.is_zero() {
            prop_assert!(product.is_zero());
        } else {
            prop_assert_eq!(product.div_exact(&monic).unwrap(), a);
        }
    }

    // The factored closed forms stay consistent on arbitrary inputs.
    #[test]
    fn closed_form_shape(n in 2u64..=400, k in 1u64..=400) {
        let c = char_poly(n, k).unwrap();
        prop_assert_eq!(c.degree(), n);
        let spectrum_total: u64 = c.spectrum().iter().map(|&(_, m)| m).sum();
        prop_assert_eq!(spectrum_total, n);
        let m = min_poly(n, k).unwrap();
        prop_assert!(c.expand().div_exact(&m.expand()).is_some());
    }

    // Certificate equality is reflexive and symmetric.
    #[test]
    fn certificate_relation(n in 2u64..=80, k1 in 1u64..=80, k2 in 1u64..=80) {
        prop_assert!(canon::is_isomorphic(n, k1, n, k1).unwrap());
        prop_assert_eq!(
            canon::is_isomorphic(n, k1, n, k2).unwrap(),
            canon::is_isomorphic(n, k2, n, k1).unwrap()
        );
    }

    // The moebius cycle count always lands on a nonnegative integer
    // and sums to t over the lengths that occur.
    #[test]
    fn moebius_counts_total(n in 2u64..=400, k in 1u64..=400) {
        let census = structure::cycle_structure(n, k).unwrap();
        let mut vertices = 0u64;
        for &(r, m) in &census.by_length {
            let counted = structure::cycles_of_length(n, k, r).unwrap();
            prop_assert_eq!(counted, m);
            vertices += r * m;
        }
        let split = pdg_core::numtheory::coprime_split(n, k).unwrap();
        prop_assert_eq!(vertices, split.t);
    }
}
