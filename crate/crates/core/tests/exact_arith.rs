use macdyson::exactq::{PolyQ, RatFuncQ};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(|v| PolyQ::from_ints(&v))
}

fn rf() -> impl Strategy<Value = RatFuncQ> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| RatFuncQ::new(&n, &d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in rf(), b in rf(), c in rf()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn canonical_string_round_trip(a in rf()) {
        let s = a.to_canonical_string();
        let back: RatFuncQ = s.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_canonical_string(), s);
    }

    #[test]
    fn serde_round_trip(a in rf()) {
        let j = serde_json::to_string(&a).unwrap();
        let back: RatFuncQ = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn representation_is_reduced(n in poly(), d in poly(), k in poly()) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        let a = RatFuncQ::new(&n, &d).unwrap();
        let b = RatFuncQ::new(&(&n * &k), &(&d * &k)).unwrap();
        prop_assert_eq!(a.to_canonical_string(), b.to_canonical_string());
    }
}

#[test]
fn zero_denominator_is_rejected() {
    assert!(RatFuncQ::new(&PolyQ::one(), &PolyQ::zero()).is_err());
    assert!(RatFuncQ::zero().checked_recip().is_err());
}
