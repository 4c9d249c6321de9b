use macdyson::cache::Cache;
use macdyson::identities;
use macdyson::laurent::{coeff_f, dyson_product, expand_f, LaurentPoly, Monomial, Var, VarKind};
use macdyson::qdyson;
use proptest::prelude::*;

fn swap_w(f: &LaurentPoly, a: usize, b: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let pairs = m.iter().map(|(v, e)| {
            let v = match v {
                v if v == Var::w(a) => Var::w(b),
                v if v == Var::w(b) => Var::w(a),
                v => v,
            };
            (v, e)
        });
        out.add_term(Monomial::from_pairs(pairs), c.clone());
    }
    out
}

fn betas() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=2, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn expansion_is_symmetric_in_w(b in betas(), cap in 1u32..3) {
        let f = expand_f(&b, 2, &[cap, cap]);
        prop_assert_eq!(swap_w(&f, 1, 2), f);
    }

    #[test]
    fn targeted_coefficients_match_expansion(b in betas(), cap in 1u32..3) {
        let f = expand_f(&b, 1, &[cap]);
        for (m, c) in f.terms() {
            let k: Vec<i32> = (1..=b.len()).map(|i| m.exp(Var::z(i))).collect();
            let mw = vec![(-m.exp(Var::w(1))) as u32];
            prop_assert_eq!(&coeff_f(&b, &k, &mw), c);
        }
    }

    #[test]
    fn constant_term_routes_agree(b in betas()) {
        let want = qdyson::ct_product(&b);
        prop_assert_eq!(dyson_product(&b).ct(), want.clone());
        prop_assert_eq!(qdyson::ct_telescoped(&b), want.clone());
        prop_assert_eq!(qdyson::ct_via_splitting(&b), want);
    }

    #[test]
    fn kadell_coefficients(b in betas(), n in 1u32..3) {
        for a in 1..=b.len() {
            prop_assert_eq!(qdyson::kadell_coeff(&b, a, n).unwrap(), qdyson::kadell_brute(&b, a, n));
        }
    }
}

#[test]
fn expansion_has_only_nonpositive_w_degrees() {
    let f = expand_f(&[1, 2], 2, &[2, 1]);
    for (m, _) in f.terms() {
        assert!(m.exps_of(VarKind::W, 2).iter().all(|&e| e <= 0));
        assert!(-m.exp(Var::w(1)) <= 2 && -m.exp(Var::w(2)) <= 1);
        assert_eq!(m.degree_in(VarKind::Z) + m.degree_in(VarKind::W), 0);
    }
}

#[test]
fn cancellation_identities() {
    for ba in 1..=3 {
        for bo in 1..=3 {
            for b in 0..ba {
                assert!(identities::cancel_before(ba, bo, b), "{ba} {bo} {b}");
                assert!(identities::cancel_after(ba, bo, b), "{ba} {bo} {b}");
            }
        }
    }
    assert!(identities::splitting_truncated(&[1, 1, 1], 2));
}

#[test]
fn kadell_index_out_of_range_is_an_error() {
    assert!(qdyson::kadell_coeff(&[1, 1], 3, 1).is_err());
    assert!(qdyson::kadell_coeff(&[1, 1], 0, 1).is_err());
}

#[test]
fn scan_reports_are_cached_transparently() {
    let d = tempfile::tempdir().unwrap();
    let cache = Cache::new(d.path());
    let cold = qdyson::vanishing_scan(&[1, 2], 2, 2, Some(&cache)).unwrap();
    let warm = qdyson::vanishing_scan(&[1, 2], 2, 2, Some(&cache)).unwrap();
    let bare = qdyson::vanishing_scan(&[1, 2], 2, 2, None).unwrap();
    assert!(cold.ok() && warm.ok() && bare.ok());
    assert_eq!(cold.checked_monomials, warm.checked_monomials);
    assert_eq!(cold.checked_monomials, bare.checked_monomials);
}
