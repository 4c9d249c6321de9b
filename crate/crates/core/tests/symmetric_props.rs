use std::collections::HashMap;

use macdyson::exactq::{PolyQ, RatFuncQ};
use macdyson::partitions::{complement, dominance_cmp, partitions, partitions_bounded, Dominance, Partition};
use macdyson::symfunc::{adjoint_apply, eps, macdonald_gs, scalar, to_g_basis, SymFunc};
use macdyson::vertexop::{h_neg, h_pos, x_minus, VState};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = RatFuncQ> {
    (prop::collection::vec(-3i64..=3, 1..4), 0i32..3).prop_filter_map("nonzero", |(v, k)| {
        let c = &RatFuncQ::from_poly(&PolyQ::from_ints(&v)) * &RatFuncQ::one_minus_q_pow(1).pow(-k);
        (!c.is_zero()).then_some(c)
    })
}

fn sym(max_weight: u32) -> impl Strategy<Value = SymFunc> {
    let lam = prop::collection::vec(1..=max_weight, 0..=max_weight as usize)
        .prop_map(Partition::from_unsorted)
        .prop_filter("weight", move |l| l.weight() <= max_weight);
    prop::collection::vec((lam, coeff()), 1..4).prop_map(SymFunc::from_terms)
}

fn homogeneous(w: u32) -> impl Strategy<Value = SymFunc> {
    let ps = partitions(w);
    prop::collection::vec((0..ps.len(), coeff()), 1..3)
        .prop_map(move |v| SymFunc::from_terms(v.into_iter().map(|(i, c)| (ps[i].clone(), c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_and_adjoint_are_adjoint(f in sym(4), u in sym(4), v in sym(4), beta in 1u32..3) {
        let lhs = scalar(&f.mul(&u), &v, beta);
        let rhs = scalar(&u, &adjoint_apply(&f, &v, beta), beta);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_relation(f in sym(4), m2 in -3i64..4, beta in 1u32..3, n in 1u32..4, m in 1u32..4) {
        let st = VState::single(m2, f);
        let lhs = h_pos(n, &h_neg(m, &st), beta).sub(&h_neg(m, &h_pos(n, &st, beta)));
        let want = if n == m {
            st.scale(&(&RatFuncQ::from_integer(n as i64) * &eps(n, beta)))
        } else {
            VState::zero()
        };
        prop_assert_eq!(lhs, want);
    }

    #[test]
    fn raising_and_lowering_are_adjoint(f in sym(4), g in sym(5), beta in 1u32..3, n in 1u32..4) {
        let (a, b) = (VState::single(0, f), VState::single(0, g));
        prop_assert_eq!(h_neg(n, &a).scalar(&b, beta), a.scalar(&h_pos(n, &b, beta), beta));
    }

    #[test]
    fn vertex_step_shifts_grade(w in 0u32..4, m2 in -3i64..2, n in -2i64..5, beta in 1u32..3) {
        let run = |f: SymFunc| {
            let out = x_minus(n, &VState::single(m2, f), beta);
            let want = w as i64 + n - (m2 + 1) * beta as i64;
            for (idx, g) in out.sectors() {
                assert_eq!(idx, m2 + 2);
                for (lam, _) in g.terms() {
                    assert_eq!(lam.weight() as i64, want);
                }
            }
        };
        let ps = partitions(w);
        for lam in ps {
            run(SymFunc::p(lam));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn homogeneous_inputs_stay_homogeneous(f in homogeneous(3), n in 0i64..4) {
        let out = x_minus(n, &VState::single(-1, f), 1);
        for (_, g) in out.sectors() {
            let grades: std::collections::BTreeSet<u32> = g.terms().map(|(l, _)| l.weight()).collect();
            prop_assert!(grades.len() <= 1);
        }
    }
}

struct Basis {
    beta: u32,
    q: HashMap<Partition, SymFunc>,
}

impl Basis {
    fn new(beta: u32) -> Self {
        Basis { beta, q: HashMap::new() }
    }

    fn get(&mut self, lam: &Partition) -> SymFunc {
        let beta = self.beta;
        self.q.entry(lam.clone()).or_insert_with(|| macdonald_gs(lam, beta).unwrap()).clone()
    }
}

#[test]
fn gram_schmidt_is_orthogonal_and_triangular() {
    for beta in 1..=2 {
        let mut b = Basis::new(beta);
        for n in 1..=5 {
            let ps = partitions(n);
            for lam in &ps {
                let q = b.get(lam);
                let gc = to_g_basis(&q, beta);
                assert!(gc[lam].is_one(), "{lam}");
                for mu in gc.keys() {
                    let d = dominance_cmp(mu, lam).unwrap();
                    assert!(matches!(d, Dominance::Greater | Dominance::Equal), "{mu} in Q{lam}");
                }
                for mu in &ps {
                    if mu != lam {
                        assert!(scalar(&q, &b.get(mu), beta).is_zero(), "<Q{lam}, Q{mu}> beta={beta}");
                    }
                }
            }
        }
    }
}

#[test]
fn products_pair_with_rectangles_only_through_complements() {
    for beta in 1..=2 {
        let mut b = Basis::new(beta);
        for k in 1..=6u32 {
            for s in 1..=6 / k {
                let r = Partition::rect(k, s);
                let qr = b.get(&r);
                for w in 0..=k * s {
                    for mu in partitions_bounded(w, Some(s as usize), Some(k)) {
                        let comp = complement(k, s, &mu).unwrap();
                        let qm = b.get(&mu);
                        for nu in partitions(k * s - w) {
                            let v = scalar(&qm.mul(&b.get(&nu)), &qr, beta);
                            assert_eq!(!v.is_zero(), nu == comp, "mu={mu} nu={nu} R={r} beta={beta}");
                        }
                    }
                }
            }
        }
    }
}
