//! Randomized algebraic laws: ring axioms for polynomials and jets, exact
//! division as a true inverse of multiplication, and parser round-trips.

use pommiez::jet::Jet;
use pommiez::parse::{parse_function, poly_to_expr};
use pommiez::poly::Poly;
use pommiez::scalar::GaussianRational;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (
        -20i64..=20,
        1i64..=12,
        -20i64..=20,
        1i64..=12,
    )
        .prop_map(|(rn, rd, in_, id)| {
            GaussianRational::ratio(rn, rd) + GaussianRational::ratio(in_, id) * GaussianRational::i()
        })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..6).prop_map(Poly::from_coeffs)
}

fn jet() -> impl Strategy<Value = Jet> {
    prop::collection::vec(scalar(), 1..8).prop_map(|coeffs| {
        let order = coeffs.len() - 1;
        Jet::new(GaussianRational::zero(), order, coeffs)
    })
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert_eq!(&a - &a, Poly::zero());
    }

    #[test]
    fn division_inverts_multiplication(a in poly(), r in scalar()) {
        // (a * (z - r)) / (z - r) = a, exactly.
        let linear = Poly::from_coeffs(vec![-&r, GaussianRational::one()]);
        let product = &a * &linear;
        prop_assert_eq!(product.exact_div_linear(&r).unwrap(), a);
    }

    #[test]
    fn jet_ring_axioms(a in jet(), b in jet(), c in jet()) {
        let n = a.order().min(b.order()).min(c.order());
        let (a, b, c) = (a.truncate(n), b.truncate(n), c.truncate(n));
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let ab_c = ab.mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let distributed = a.mul(&b.add(&c).unwrap()).unwrap();
        let expanded = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(distributed, expanded);
    }

    #[test]
    fn expression_round_trip(p in poly()) {
        let text = poly_to_expr(&p);
        prop_assert_eq!(parse_function(&text).unwrap(), p);
    }

    #[test]
    fn scalar_text_round_trip(c in scalar()) {
        prop_assert_eq!(c.to_string().parse::<GaussianRational>().unwrap(), c);
    }
}
