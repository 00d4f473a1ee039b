//! Property tests for the exact polynomial arithmetic: evaluation and
//! interpolation invert each other, ring laws hold, and serialization
//! round-trips, all over random rational coefficients.

use matpoly::poly::{
    interpolate, poly_from_coeff_strings, poly_to_coeff_strings, rat_frac, PolyT,
};
use num::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| rat_frac(n, d))
}

/// Random polynomial of degree <= 12 (possibly lower after trimming).
fn poly() -> impl Strategy<Value = PolyT> {
    vec(coefficient(), 0..=13).prop_map(PolyT::from_coeffs)
}

/// Random Laurent polynomial: an ordinary one shifted by T^offset.
fn laurent() -> impl Strategy<Value = PolyT> {
    (poly(), -6i64..=6).prop_map(|(p, off)| p.mul_monomial(off))
}

proptest! {
    #[test]
    fn eval_then_interpolate_recovers_the_polynomial(p in poly()) {
        let bound = 12usize;
        let points: Vec<(BigRational, BigRational)> = (0..=bound as i64 + 2)
            .map(|x| {
                let x = rat_frac(x, 1);
                let y = p.eval(&x).expect("ordinary polynomials evaluate");
                (x, y)
            })
            .collect();
        let back = interpolate(&points, bound).expect("consistent data");
        prop_assert_eq!(back, p);
    }

    #[test]
    fn interpolation_rejects_data_above_the_degree_bound(c in coefficient()) {
        // A cubic disguised as data for a quadratic bound: the extra
        // checked point must expose the mismatch.
        let mut coeffs = vec![c; 3];
        coeffs.push(rat_frac(1, 1));
        let cubic = PolyT::from_coeffs(coeffs);
        let points: Vec<_> = (0..=4i64)
            .map(|x| {
                let x = rat_frac(x, 1);
                let y = cubic.eval(&x).unwrap();
                (x, y)
            })
            .collect();
        prop_assert!(interpolate(&points, 2).is_err());
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in laurent(), b in laurent(), c in laurent()
    ) {
        let left = a.add(&b).mul(&c);
        let right = a.mul(&c).add(&b.mul(&c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let product = a.mul(&b);
        let back = product.div_exact(&b).expect("product divides exactly");
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly()) {
        let at = rat_frac(7, 3);
        let lhs = a.mul(&b).add(&a).eval(&at).unwrap();
        let rhs = a.eval(&at).unwrap() * b.eval(&at).unwrap() + a.eval(&at).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coefficient_strings_round_trip(p in poly()) {
        let strings = poly_to_coeff_strings(&p).expect("ordinary polynomial");
        let back = poly_from_coeff_strings(&strings).expect("strings parse");
        prop_assert_eq!(back, p);
    }
}
