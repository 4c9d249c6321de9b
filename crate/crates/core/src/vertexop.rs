//! The vertex operator `X(z) = Y(z) M(z) exp(-sum_n h_n tau_n z^{-n} / n)`
//! on `V = Lambda ⊗ Q[Z/2]` and its coefficients `X_{-n}`.
//!
//! Lattice indices `e^{m eta}` are stored doubled (`2m`) so they stay integral.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactq::RatFuncQ;
use crate::laurent::coeff_f;
use crate::partitions::{partitions, Partition};
use crate::symfunc::{adjoint_apply, eps, g, qn, qn_signed, scalar, tau, SymFunc};

/// Finite sum of `f_m ⊗ e^{m eta}`; keys are `2m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VState {
    sectors: BTreeMap<i64, SymFunc>,
}

impl VState {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f ⊗ e^{(index2/2) eta}`
    pub fn single(index2: i64, f: SymFunc) -> Self {
        let mut s = Self::zero();
        s.add_sector(index2, f);
        s
    }

    /// `1 ⊗ e^{(index2/2) eta}`
    pub fn vacuum(index2: i64) -> Self {
        Self::single(index2, SymFunc::one())
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn sector(&self, index2: i64) -> SymFunc {
        self.sectors.get(&index2).cloned().unwrap_or_default()
    }

    pub fn sectors(&self) -> impl Iterator<Item = (i64, &SymFunc)> {
        self.sectors.iter().map(|(k, v)| (*k, v))
    }

    pub fn add_sector(&mut self, index2: i64, f: SymFunc) {
        let v = match self.sectors.remove(&index2) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !v.is_zero() {
            self.sectors.insert(index2, v);
        }
    }

    pub fn add(&self, o: &VState) -> VState {
        let mut r = self.clone();
        for (k, f) in &o.sectors {
            r.add_sector(*k, f.clone());
        }
        r
    }

    pub fn sub(&self, o: &VState) -> VState {
        self.add(&o.scale(&RatFuncQ::from_integer(-1)))
    }

    pub fn scale(&self, c: &RatFuncQ) -> VState {
        let mut r = VState::zero();
        for (k, f) in &self.sectors {
            r.add_sector(*k, f.scale(c));
        }
        r
    }

    fn map(&self, f: impl Fn(&SymFunc) -> SymFunc) -> VState {
        let mut r = VState::zero();
        for (k, v) in &self.sectors {
            r.add_sector(*k, f(v));
        }
        r
    }

    /// Extended scalar product: sectors are mutually orthogonal.
    pub fn scalar(&self, o: &VState, beta: u32) -> RatFuncQ {
        self.sectors
            .iter()
            .filter_map(|(k, f)| o.sectors.get(k).map(|h| scalar(f, h, beta)))
            .fold(RatFuncQ::zero(), |a, b| &a + &b)
    }

    /// JSON: a list of sectors, each with a `lattice` field (`m` as a string
    /// such as `"-1/2"`) and the symmetric function.
    pub fn to_json(&self, beta: u32) -> serde_json::Value {
        let secs: Vec<serde_json::Value> = self
            .sectors
            .iter()
            .map(|(k, f)| {
                let mut v = f.to_json(beta);
                v["lattice"] = serde_json::Value::String(lattice_label(*k));
                v
            })
            .collect();
        serde_json::Value::Array(secs)
    }
}

fn lattice_label(index2: i64) -> String {
    if index2 % 2 == 0 {
        (index2 / 2).to_string()
    } else {
        format!("{index2}/2")
    }
}

/// `eps_q(beta, n) = (-1)^{beta n(n-1)/2} q^{-beta(beta+1) n(n-1)/4}`
pub fn epsilon_q(beta: u32, n: u32) -> RatFuncQ {
    let (b, n) = (beta as i64, n as i64);
    let e = b * (b + 1) * n * (n - 1);
    debug_assert_eq!(e % 4, 0);
    let v = RatFuncQ::q_pow(-e / 4);
    if (b * n * (n - 1) / 2) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `h_{-n}`: multiplication by `p_n`.
pub fn h_neg(n: u32, st: &VState) -> VState {
    let pn = SymFunc::p(Partition::from_unsorted(vec![n]));
    st.map(|f| f.mul(&pn))
}

/// `h_n = n (1 - q^n)/(1 - q^{n beta}) d/dp_n`.
pub fn h_pos(n: u32, st: &VState, beta: u32) -> VState {
    let pn = SymFunc::p(Partition::from_unsorted(vec![n]));
    st.map(|f| adjoint_apply(&pn, f, beta))
}

/// `Y_{-n}`: multiplication by `Q_n`.
pub fn y_minus(n: u32, st: &VState, beta: u32) -> VState {
    let q = qn(n, beta);
    st.map(|f| f.mul(&q))
}

/// `Y_{-n}^*`, the adjoint of multiplication by `Q_n`.
pub fn y_star(n: u32, st: &VState, beta: u32) -> VState {
    let q = qn(n, beta);
    st.map(|f| adjoint_apply(&q, f, beta))
}

/// Annihilation part on one `p_lam`: the terms
/// `C(m(lam), m(mu)) (-1)^{l(mu)} tau_mu eps_mu z^{-|mu|} p_{lam \ mu}`,
/// accumulated into `out[|mu|]`.
fn annihilate_into(lam: &Partition, c: &RatFuncQ, beta: u32, te: &mut HashMap<u32, RatFuncQ>, out: &mut BTreeMap<u32, SymFunc>) {
    for mu in lam.sub_multisets() {
        let mut v = c * &RatFuncQ::from_bigint(lam.multiplicity_binomial(&mu));
        for &x in mu.parts() {
            let f = te.entry(x).or_insert_with(|| -(&tau(x, beta) * &eps(x, beta)));
            v = &v * &*f;
        }
        let rest = lam.multiset_difference(&mu).expect("sub-multiset");
        out.entry(mu.weight()).or_default().add_term(rest, v);
    }
}

/// Coefficient of `z^n` in `X(z).st`: annihilation, then the lattice shift
/// `M(z)` (factor `z^{(2m+1) beta}`, `m -> m+1`), then creation, which
/// contributes `Q_d` for the `z`-degree `d` that balances to `n`.
pub fn x_minus(n: i64, st: &VState, beta: u32) -> VState {
    let mut out = VState::zero();
    for (&m2, f) in &st.sectors {
        let mut groups: BTreeMap<u32, SymFunc> = BTreeMap::new();
        let mut te = HashMap::new();
        for (lam, c) in f.terms() {
            annihilate_into(lam, c, beta, &mut te, &mut groups);
        }
        let shift = (m2 + 1) * beta as i64;
        let parts: Vec<SymFunc> = groups
            .into_par_iter()
            .filter_map(|(w, grp)| {
                let d = n + w as i64 - shift;
                (d >= 0).then(|| grp.mul(&qn_signed(d, beta)))
            })
            .collect();
        for p in parts {
            out.add_sector(m2 + 2, p);
        }
    }
    out
}

/// `X_{-lam_s} ... X_{-lam_1} . 1 ⊗ e^{-s eta/2}`, applying `X_{-lam_1}` first.
pub fn x_product(lam: &Partition, beta: u32) -> VState {
    let s = lam.len() as i64;
    let mut st = VState::vacuum(-s);
    for &x in lam.parts() {
        st = x_minus(x as i64, &st, beta);
    }
    st
}

/// `(-1)^{l(nu)} tau_nu / z_nu` for every `nu |- w`.
fn creation_weights(w: u32, beta: u32, tau_cache: &mut HashMap<u32, RatFuncQ>) -> Vec<(Partition, RatFuncQ)> {
    partitions(w)
        .into_iter()
        .map(|nu| {
            let mut v = RatFuncQ::from_bigint(nu.z_lambda()).recip();
            for &x in nu.parts() {
                let t = tau_cache.entry(x).or_insert_with(|| tau(x, beta));
                v = &v * &-&*t;
            }
            (nu, v)
        })
        .collect()
}

/// Closed combinatorial sum for `X_{-lam_s} ... X_{-lam_1} . 1 ⊗ e^{n eta}`
/// (`n2 = 2n`), over pairs of partition sequences `(mu^i, nu^i)` with
/// `|mu^i| = lam_1 + ... + lam_i - i(i + 2n) beta`, `nu^i ⊂' mu^i` and
/// `mu^i \ nu^i ⊂' mu^{i-1}`.
///
/// Evaluated as a dynamic programme over `mu^i`: first collect
/// `A[kappa] = sum_{mu^{i-1}} DP[mu^{i-1}] C(m(mu^{i-1}), m(kappa))`, then
/// `DP[kappa ∪ nu] += A[kappa] (-1)^{l(nu)} tau_nu / z_nu`.
pub fn x_product_comb(lam: &Partition, beta: u32, n2: i64) -> VState {
    let s = lam.len() as i64;
    let b = beta as i64;
    let mut dp: HashMap<Partition, RatFuncQ> = HashMap::from([(Partition::zero(), RatFuncQ::one())]);
    let mut tau_cache = HashMap::new();
    let mut weights_cache: HashMap<u32, Vec<(Partition, RatFuncQ)>> = HashMap::new();
    let mut partial = 0i64;
    for i in 1..=s {
        partial += lam.part(i as usize) as i64;
        let w = partial - i * (i + n2) * b;
        if w < 0 {
            return VState::zero();
        }
        let w = w as u32;
        let mut a: HashMap<Partition, RatFuncQ> = HashMap::new();
        for (mu, c) in &dp {
            for kappa in mu.sub_multisets() {
                if kappa.weight() > w {
                    continue;
                }
                let v = c * &RatFuncQ::from_bigint(mu.multiplicity_binomial(&kappa));
                match a.get_mut(&kappa) {
                    Some(e) => *e += &v,
                    None => {
                        a.insert(kappa, v);
                    }
                }
            }
        }
        for need in a.keys().map(|k| w - k.weight()).collect::<std::collections::BTreeSet<_>>() {
            weights_cache.entry(need).or_insert_with(|| creation_weights(need, beta, &mut tau_cache));
        }
        let chunks: Vec<HashMap<Partition, RatFuncQ>> = a
            .par_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(kappa, c)| {
                let mut local = HashMap::new();
                for (nu, t) in &weights_cache[&(w - kappa.weight())] {
                    local.insert(kappa.union(nu), c * t);
                }
                local
            })
            .collect();
        let mut next: HashMap<Partition, RatFuncQ> = HashMap::new();
        for ch in chunks {
            for (k, v) in ch {
                match next.get_mut(&k) {
                    Some(e) => *e += &v,
                    None => {
                        next.insert(k, v);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    let mut out = SymFunc::zero();
    for (mu, c) in dp {
        let mut v = c;
        for &x in mu.parts() {
            v = &v / &(&tau(x, beta) * &eps(x, beta));
            v = -v;
        }
        out.add_term(mu, v);
    }
    VState::single(n2 + 2 * s, out)
}

/// `<X_{-lam} . 1 ⊗ e^{-s eta/2}, g_mu ⊗ e^{s eta/2}>` by direct evaluation.
pub fn xy_pairing(lam: &Partition, mu: &Partition, beta: u32) -> RatFuncQ {
    let s = lam.len() as i64;
    let x = x_product(lam, beta);
    scalar(&x.sector(s), &g(mu, beta), beta)
}

/// The same pairing as `eps_q(beta, s)` times the coefficient of
/// `z^lam / w^mu` in `F_{beta,q}[s;t]`.
pub fn xy_pairing_laurent(lam: &Partition, mu: &Partition, beta: u32) -> RatFuncQ {
    let s = lam.len();
    let betas = vec![beta; s];
    let k: Vec<i32> = lam.parts().iter().map(|&x| x as i32).collect();
    &epsilon_q(beta, s as u32) * &coeff_f(&betas, &k, mu.parts())
}

/// `prod_i C(m_i(lam), m_i(mu))` as a field element.
pub fn multiplicity_binomial_rf(lam: &Partition, mu: &Partition) -> RatFuncQ {
    RatFuncQ::from_bigint(lam.multiplicity_binomial(mu))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{expand_f, inv_poch_series};
    use crate::symfunc::{lowering_apply, macdonald_gs};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_step_gives_one_row() {
        for beta in 1..=2 {
            for k in 0..=4 {
                let st = x_minus(k, &VState::vacuum(-1), beta);
                assert_eq!(st, VState::single(1, qn(k as u32, beta)));
            }
        }
    }

    #[test]
    fn very_negative_degree_vanishes() {
        let st = VState::single(-2, qn(2, 1));
        assert!(x_minus(-4, &st, 1).is_zero());
    }

    #[test]
    fn two_steps_at_beta_one() {
        let st = x_minus(1, &x_minus(1, &VState::vacuum(-2), 1), 1);
        let c = RatFuncQ::from_poly(&crate::exactq::PolyQ::from_ints(&[1, 1]));
        let want = macdonald_gs(&p("1,1"), 1).unwrap().scale(&(&epsilon_q(1, 2) * &c));
        assert_eq!(st, VState::single(2, want));
        assert_eq!(epsilon_q(1, 2), -RatFuncQ::q_pow(-1));
    }

    #[test]
    fn product_matches_lowering_formula() {
        for (lam, beta) in [("1,1", 1), ("2,1", 1), ("2,1", 2), ("2,2", 1)] {
            let lam = p(lam);
            let s = lam.len();
            let betas = vec![beta; s];
            let f = expand_f(&betas, 0, &[]);
            let d = crate::laurent::LaurentPoly::zero().add(&rename_z_to_d(&f));
            let idx: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
            let want = lowering_apply(&d, &idx, beta).scale(&epsilon_q(beta, s as u32));
            assert_eq!(x_product(&lam, beta), VState::single(s as i64, want), "lam={lam:?} beta={beta}");
        }
    }

    fn rename_z_to_d(f: &crate::laurent::LaurentPoly) -> crate::laurent::LaurentPoly {
        use crate::laurent::{LaurentPoly, Monomial, Var};
        let mut out = LaurentPoly::zero();
        for (m, c) in f.terms() {
            out.add_term(Monomial::from_pairs(m.iter().map(|(v, e)| (Var::d(v.index as usize), e))), c.clone());
        }
        out
    }

    #[test]
    fn comb_matches_stepwise() {
        for (lam, beta, n2) in [("1,1", 1, -2), ("2,2", 1, -2), ("2,1", 2, -2), ("3", 2, -1), ("2,1,1", 1, -3)] {
            let lam = p(lam);
            let mut st = VState::vacuum(n2);
            for &x in lam.parts() {
                st = x_minus(x as i64, &st, beta);
            }
            assert_eq!(x_product_comb(&lam, beta, n2), st, "lam={lam:?} beta={beta}");
        }
    }

    #[test]
    fn pairing_routes_agree() {
        for (lam, mu, beta) in [("1", "1", 2), ("1,1", "2", 1), ("2", "1,1", 1), ("2,1", "2,1", 2), ("1,1", "1,1", 2)] {
            let (lam, mu) = (p(lam), p(mu));
            assert_eq!(xy_pairing(&lam, &mu, beta), xy_pairing_laurent(&lam, &mu, beta), "{lam:?} {mu:?}");
        }
        assert_eq!(xy_pairing(&p("1"), &p("1"), 3), eps(1, 3).recip());
    }

    #[test]
    fn one_row_norm_is_inverse_pochhammer_coefficient() {
        for beta in 1..=3 {
            for m in 0..=5 {
                let q = qn(m, beta);
                assert_eq!(scalar(&q, &q, beta), inv_poch_series(beta, m)[m as usize].clone());
            }
        }
    }

    #[test]
    fn heisenberg_relation() {
        let st = VState::single(1, qn(3, 2).add(&SymFunc::p(p("2,1"))));
        for n in 1..=3u32 {
            for m in 1..=3u32 {
                let lhs = h_pos(n, &h_neg(m, &st), 2).sub(&h_neg(m, &h_pos(n, &st, 2)));
                let want = if n == m {
                    st.scale(&(&RatFuncQ::from_integer(n as i64) * &eps(n, 2)))
                } else {
                    VState::zero()
                };
                assert_eq!(lhs, want);
            }
        }
    }
}
