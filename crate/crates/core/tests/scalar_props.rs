use hopf_forge::scalars::{GaussRat, SPoly, Scalar, SpecPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(re, d, im)| {
        GaussRat::new(BigRational::new(BigInt::from(re), BigInt::from(d)), BigRational::from_integer(BigInt::from(im)))
    })
}

fn poly() -> impl Strategy<Value = SPoly> {
    prop::collection::vec(gauss(), 0..4).prop_map(SPoly::from_vec)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly(), -2i64..=2).prop_filter_map("nonzero denominator", |(n, d, k)| {
        if d.is_zero() {
            return None;
        }
        let x = Scalar::from_parts(n, d).ok()?;
        Some(&x * &Scalar::s_pow(k))
    })
}

fn is_canonical(x: &Scalar) -> bool {
    x.denom().leading().is_some_and(GaussRat::is_one) && x.numer().gcd(x.denom()).is_one()
        || x.is_zero() && x.denom().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn results_are_canonical(x in scalar(), y in scalar()) {
        prop_assert!(is_canonical(&(&x + &y)));
        prop_assert!(is_canonical(&(&x * &y)));
        prop_assert!(is_canonical(&(&x - &y)));
    }

    #[test]
    fn inverse_and_ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(x in scalar(), y in scalar()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn literal_round_trip(x in scalar()) {
        let text = x.to_string();
        let back: Scalar = text.parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn specialization_commutes_with_field_ops(x in scalar(), y in scalar()) {
        let p = SpecPoint::ratio(2, 7).unwrap();
        if let (Ok(a), Ok(b)) = (x.specialize(&p), y.specialize(&p)) {
            if let Ok(c) = (&x * &y).specialize(&p) {
                prop_assert_eq!(c, &a * &b);
            }
            if let Ok(c) = (&x + &y).specialize(&p) {
                prop_assert_eq!(c, &a + &b);
            }
        }
    }

    #[test]
    fn self_adjoint_values_specialize_to_rationals(x in scalar()) {
        let h = &x + &x.conj();
        prop_assert!(h.is_self_adjoint());
        for p in [SpecPoint::ratio(1, 3).unwrap(), SpecPoint::ratio(1, 2).unwrap(), SpecPoint::ratio(2, 3).unwrap()] {
            if let Ok(v) = h.specialize(&p) {
                prop_assert!(v.is_real());
            }
        }
    }
}
