//! Symmetric functions in the power-sum basis at `t = q^beta`.
//!
//! [`Sym<F>`] is a sparse map `lambda -> coefficient of p_lambda` over a
//! field `F`. [`SymFunc`] works over `Q(q)`, [`RationalSymFunc`] over `Q`
//! (Jack limits).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::RatFuncQ;
use crate::laurent::{LaurentPoly, VarKind};
use crate::linalg::{permutations_with_sign, solve, Field};
use crate::partitions::{dominance_cmp, partitions, Dominance, Partition};

/// Sparse element of the symmetric-function algebra in the `p` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym<F: Field> {
    terms: BTreeMap<Partition, F>,
}

pub type SymFunc = Sym<RatFuncQ>;
pub type RationalSymFunc = Sym<BigRational>;

impl<F: Field> Default for Sym<F> {
    fn default() -> Self {
        Sym { terms: BTreeMap::new() }
    }
}

impl<F: Field> Sym<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::p(Partition::zero())
    }

    /// `p_lambda`
    pub fn p(lam: Partition) -> Self {
        Self::term(lam, F::one())
    }

    pub fn term(lam: Partition, c: F) -> Self {
        let mut s = Self::zero();
        s.add_term(lam, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, F)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (l, c) in it {
            s.add_term(l, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> F {
        self.terms.get(lam).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &F)> {
        self.terms.iter()
    }

    /// Common weight of all terms; `None` for zero or mixed grades.
    pub fn grade(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|l| l.weight());
        let g = it.next()?;
        it.all(|w| w == g).then_some(g)
    }

    pub fn add_term(&mut self, lam: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lam) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Sym { terms: self.terms.iter().map(|(l, c)| (l.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Sym { terms: self.terms.iter().map(|(l, x)| (l.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<Partition, F> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let k = a.union(b);
                let v = x.mul(y);
                match acc.get_mut(&k) {
                    Some(e) => *e = e.add(&v),
                    None => {
                        acc.insert(k, v);
                    }
                }
            }
        }
        Self::from_terms(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Sym<G>> {
        let mut out = Sym::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    /// JSON form `{"basis": "p", "beta": b, "terms": [...]}`.
    pub fn to_json(&self, beta: u32) -> serde_json::Value {
        serde_json::to_value(SymJson {
            basis: "p".into(),
            beta,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson { partition: l.parts().to_vec(), coeff: c.to_json_string() })
                .collect(),
        })
        .expect("symmetric function JSON")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    basis: String,
    beta: u32,
    terms: Vec<TermJson>,
}

impl SymFunc {
    /// Parses the JSON form, returning the value and its `beta`.
    pub fn from_json(v: &serde_json::Value) -> Result<(SymFunc, u32)> {
        let j: SymJson = serde_json::from_value(v.clone())?;
        if j.basis != "p" {
            return Err(Error::Parse(format!("unsupported basis `{}`", j.basis)));
        }
        let mut s = SymFunc::zero();
        for t in j.terms {
            s.add_term(Partition::new(t.partition)?, t.coeff.parse()?);
        }
        Ok((s, j.beta))
    }
}

/// `eps_n = (1 - q^n) / (1 - q^{n beta})`
pub fn eps(n: u32, beta: u32) -> RatFuncQ {
    &RatFuncQ::one_minus_q_pow(n as i64) / &RatFuncQ::one_minus_q_pow((n * beta) as i64)
}

/// `tau_n = (q^{-n beta} - q^{n beta}) / (1 - q^n)`
pub fn tau(n: u32, beta: u32) -> RatFuncQ {
    let nb = (n * beta) as i64;
    &(&RatFuncQ::q_pow(-nb) - &RatFuncQ::q_pow(nb)) / &RatFuncQ::one_minus_q_pow(n as i64)
}

/// One-row function `sum_{lam |- n} z_lam^{-1} prod_i c(lam_i) p_lam`.
pub fn one_row<F: Field>(n: u32, c: impl Fn(u32) -> F) -> Sym<F> {
    let cs: Vec<F> = (0..=n).map(|m| if m == 0 { F::one() } else { c(m) }).collect();
    Sym::from_terms(partitions(n).into_iter().map(|lam| {
        let mut v = F::one().div(&F::from_bigint(&lam.z_lambda()));
        for &x in lam.parts() {
            v = v.mul(&cs[x as usize]);
        }
        (lam, v)
    }))
}

fn qn_cache() -> &'static Mutex<HashMap<(u32, u32), SymFunc>> {
    static C: OnceLock<Mutex<HashMap<(u32, u32), SymFunc>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `Q_n(q, q^beta)`, with `Q_0 = 1`.
pub fn qn(n: u32, beta: u32) -> SymFunc {
    if let Some(v) = qn_cache().lock().unwrap().get(&(n, beta)) {
        return v.clone();
    }
    let v = one_row(n, |m| eps(m, beta).recip());
    qn_cache().lock().unwrap().insert((n, beta), v.clone());
    v
}

/// `Q_n` for an integer index; zero for `n < 0`.
pub fn qn_signed(n: i64, beta: u32) -> SymFunc {
    if n < 0 {
        SymFunc::zero()
    } else {
        qn(n as u32, beta)
    }
}

/// `g_lambda = Q_{lambda_1} Q_{lambda_2} ...`
pub fn g(lam: &Partition, beta: u32) -> SymFunc {
    lam.parts().iter().fold(SymFunc::one(), |acc, &x| acc.mul(&qn(x, beta)))
}

/// `<f, g> = sum_lam f_lam g_lam w(lam)` for a diagonal weight.
pub fn scalar_with<F: Field>(f: &Sym<F>, g: &Sym<F>, w: impl Fn(&Partition) -> F) -> F {
    let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let mut acc = F::zero();
    for (l, x) in &small.terms {
        if let Some(y) = big.terms.get(l) {
            acc = acc.add(&x.mul(y).mul(&w(l)));
        }
    }
    acc
}

/// `z_lam prod_i (1 - q^{lam_i}) / (1 - q^{beta lam_i})`
pub fn p_norm(lam: &Partition, beta: u32) -> RatFuncQ {
    lam.parts().iter().fold(RatFuncQ::from_bigint(lam.z_lambda()), |acc, &x| &acc * &eps(x, beta))
}

/// The `(q, q^beta)` scalar product.
pub fn scalar(f: &SymFunc, g: &SymFunc, beta: u32) -> RatFuncQ {
    scalar_with(f, g, |l| p_norm(l, beta))
}

/// `f^*.u` where `p_n^*` acts as `n e(n) d/dp_n`.
pub fn adjoint_with<F: Field>(f: &Sym<F>, u: &Sym<F>, e: impl Fn(u32) -> F) -> Sym<F> {
    let mut out = Sym::zero();
    for (lam, c) in &f.terms {
        let ml = lam.multiplicities();
        for (mu, d) in &u.terms {
            let Some(rest) = mu.multiset_difference(lam) else { continue };
            let mm = mu.multiplicities();
            let mut v = c.mul(d);
            for (&n, &k) in &ml {
                let big_m = mm[&n];
                let ne = F::from_i64(n as i64).mul(&e(n));
                for j in 0..k {
                    v = v.mul(&ne).mul(&F::from_i64((big_m - j) as i64));
                }
            }
            out.add_term(rest, v);
        }
    }
    out
}

/// `f^*.u` for the `(q, q^beta)` scalar product.
pub fn adjoint_apply(f: &SymFunc, u: &SymFunc, beta: u32) -> SymFunc {
    adjoint_with(f, u, |n| eps(n, beta))
}

/// Product `Q_{a_1} ... Q_{a_s}` for integer indices; zero if any is negative.
pub fn q_product(idx: &[i64], beta: u32) -> SymFunc {
    if idx.iter().any(|&x| x < 0) {
        return SymFunc::zero();
    }
    g(&Partition::from_unsorted(idx.iter().map(|&x| x as u32).collect()), beta)
}

/// Applies a Laurent polynomial in `D_1..D_s` to `Q_{lam_1} ... Q_{lam_s}`,
/// returning the result in the `g` basis.
pub fn lowering_apply_g(l: &LaurentPoly, lam: &[i64]) -> BTreeMap<Partition, RatFuncQ> {
    let s = lam.len();
    let mut out: BTreeMap<Partition, RatFuncQ> = BTreeMap::new();
    for (m, c) in l.terms() {
        assert!(m.iter().all(|(v, _)| v.kind == VarKind::D), "lowering operator must involve only D variables");
        let e = m.exps_of(VarKind::D, s);
        let idx: Vec<i64> = lam.iter().zip(&e).map(|(&x, &k)| x - k as i64).collect();
        if idx.iter().any(|&x| x < 0) {
            continue;
        }
        let key = Partition::from_unsorted(idx.iter().map(|&x| x as u32).collect());
        let v = out.remove(&key).map_or_else(|| c.clone(), |x| &x + c);
        if !v.is_zero() {
            out.insert(key, v);
        }
    }
    out
}

/// `sum_nu c_nu g_nu` in the `p` basis.
pub fn from_g_basis(gc: &BTreeMap<Partition, RatFuncQ>, beta: u32) -> SymFunc {
    let parts: Vec<SymFunc> = gc.par_iter().map(|(nu, c)| g(nu, beta).scale(c)).collect();
    parts.iter().fold(SymFunc::zero(), |acc, x| acc.add(x))
}

/// Lowering operator action in the `p` basis.
pub fn lowering_apply(l: &LaurentPoly, lam: &[i64], beta: u32) -> SymFunc {
    from_g_basis(&lowering_apply_g(l, lam), beta)
}

/// Rewrites `f` in the basis `g_nu = prod Q_{nu_i}` built from `one_row`.
/// Peels off the support partition of minimal length each round; `g_nu`
/// contains `p_nu` and otherwise only strictly longer partitions.
pub fn to_g_basis_with<F: Field>(f: &Sym<F>, row: impl Fn(u32) -> Sym<F>) -> BTreeMap<Partition, F> {
    let mut rows: HashMap<u32, Sym<F>> = HashMap::new();
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    while let Some(nu) = rest.terms.keys().min_by_key(|l| l.len()).cloned() {
        let gnu = nu.parts().iter().fold(Sym::one(), |acc: Sym<F>, &x| {
            let r = rows.entry(x).or_insert_with(|| row(x));
            acc.mul(r)
        });
        let a = rest.coeff(&nu).div(&gnu.coeff(&nu));
        rest = rest.sub(&gnu.scale(&a));
        out.insert(nu, a);
    }
    out
}

pub fn to_g_basis(f: &SymFunc, beta: u32) -> BTreeMap<Partition, RatFuncQ> {
    to_g_basis_with(f, |n| qn(n, beta))
}

/// Unique `Q_lam = g_lam + sum_{mu > lam} d_mu g_mu` orthogonal to every
/// `g_mu` with `mu > lam`, over any field, by solving the linear system.
pub fn gram_schmidt_with<F: Field>(
    lam: &Partition,
    row: impl Fn(u32) -> Sym<F> + Sync,
    w: impl Fn(&Partition) -> F + Sync,
) -> Result<Sym<F>> {
    let n = lam.weight();
    let upper: Vec<Partition> = partitions(n)
        .into_iter()
        .filter(|mu| dominance_cmp(mu, lam).expect("equal weight") == Dominance::Greater)
        .collect();
    let rows: Vec<Sym<F>> = (0..=n).into_par_iter().map(&row).collect();
    let gfun = |mu: &Partition| mu.parts().iter().fold(Sym::one(), |acc: Sym<F>, &x| acc.mul(&rows[x as usize]));
    let glam = gfun(lam);
    let gs: Vec<Sym<F>> = upper.par_iter().map(gfun).collect();
    let mat: Vec<Vec<F>> = gs
        .par_iter()
        .map(|gn| gs.iter().map(|gm| scalar_with(gm, gn, &w)).collect())
        .collect();
    let rhs: Vec<F> = gs.par_iter().map(|gn| scalar_with(&glam, gn, &w).neg()).collect();
    let d = solve(mat, rhs)?;
    Ok(gs.iter().zip(&d).fold(glam, |acc, (gm, dm)| acc.add(&gm.scale(dm))))
}

/// Gram–Schmidt Macdonald function `Q_lam(q, q^beta)` in the `p` basis.
pub fn macdonald_gs(lam: &Partition, beta: u32) -> Result<SymFunc> {
    gram_schmidt_with(lam, |n| qn(n, beta), |l| p_norm(l, beta))
}

/// `prod_{(i,j)} (1 - q^{lam_i - j + beta(lam'_j - i + 1)}) / (1 - q^{lam_i - j + 1 + beta(lam'_j - i)})`
pub fn norm_closed(lam: &Partition, beta: u32) -> RatFuncQ {
    let conj = lam.conjugate();
    let b = beta as i64;
    let mut acc = RatFuncQ::one();
    for i in 1..=lam.len() {
        for j in 1..=lam.part(i) as usize {
            let arm = lam.part(i) as i64 - j as i64;
            let leg = conj.part(j) as i64 - i as i64;
            acc = &acc * &(&RatFuncQ::one_minus_q_pow(arm + b * (leg + 1)) / &RatFuncQ::one_minus_q_pow(arm + 1 + b * leg));
        }
    }
    acc
}

/// Schur function `det(h_{lam_i - i + j})` with `h_n = Q_n(q, q)`.
pub fn schur_jt(lam: &Partition) -> SymFunc {
    let l = lam.len();
    let mut acc = SymFunc::zero();
    for (perm, sign) in permutations_with_sign(l) {
        let idx: Vec<i64> = (0..l).map(|i| lam.part(i + 1) as i64 - i as i64 + perm[i] as i64).collect();
        let t = q_product(&idx, 1);
        acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Coefficient-wise `q -> 1` limit.
pub fn limit_sym(f: &SymFunc) -> Result<RationalSymFunc> {
    f.try_map(|c| c.limit_at_one())
}

/// Jack one-row function `Q_n(1/beta) = sum z_lam^{-1} beta^{l(lam)} p_lam`.
pub fn jack_qn(n: u32, beta: u32) -> RationalSymFunc {
    let b = BigRational::from_integer(BigInt::from(beta));
    one_row(n, |_| b.clone())
}

/// Jack scalar product weight `z_lam beta^{-l(lam)}`.
pub fn jack_p_norm(lam: &Partition, beta: u32) -> BigRational {
    BigRational::new(lam.z_lambda(), BigInt::from(beta).pow(lam.len() as u32))
}

/// Jack function `Q_lam(1/beta)` by Gram–Schmidt over `Q`.
pub fn jack_gs(lam: &Partition, beta: u32) -> Result<RationalSymFunc> {
    gram_schmidt_with(lam, |n| jack_qn(n, beta), |l| jack_p_norm(l, beta))
}

/// Renders a `g`-basis expansion, e.g. `g[1,1] - g[2]`.
pub fn format_g_basis<F: Field>(gc: &BTreeMap<Partition, F>) -> String {
    if gc.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (nu, c)) in gc.iter().enumerate() {
        let body = format!("g[{}]", nu.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let (neg, mag) = if c.neg().is_one() {
            (true, None)
        } else if c.is_one() {
            (false, None)
        } else {
            let txt = c.to_string();
            match txt.strip_prefix('-') {
                Some(r) if !needs_parens(r) => (true, Some(r.to_string())),
                _ => (false, Some(txt)),
            }
        };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match mag {
            None => s.push_str(&body),
            Some(m) if needs_parens(&m) => s.push_str(&format!("({m})*{body}")),
            Some(m) => s.push_str(&format!("{m}*{body}")),
        }
    }
    s
}

fn needs_parens(s: &str) -> bool {
    s.contains(" + ") || s.contains(" - ") || s.contains('/')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::PolyQ;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn c(beta: u32, n: u32) -> RatFuncQ {
        eps(n, beta).recip()
    }

    #[test]
    fn one_row_examples() {
        assert_eq!(qn(0, 2), SymFunc::one());
        assert_eq!(qn(1, 3), SymFunc::term(p("1"), c(3, 1)));
        let half = RatFuncQ::from_rational(&BigRational::new(1.into(), 2.into()));
        let want = SymFunc::from_terms([(p("1,1"), &(&c(2, 1) * &c(2, 1)) * &half), (p("2"), &c(2, 2) * &half)]);
        assert_eq!(qn(2, 2), want);
    }

    #[test]
    fn scalar_examples() {
        let one_plus_q = RatFuncQ::from_poly(&PolyQ::from_ints(&[1, 1]));
        assert_eq!(scalar(&SymFunc::p(p("1")), &SymFunc::p(p("1")), 2), one_plus_q.recip());
        assert!(scalar(&SymFunc::p(p("1")), &SymFunc::p(p("2")), 2).is_zero());
        let want = &(&RatFuncQ::from_integer(2) * &RatFuncQ::one_minus_q_pow(2)) / &RatFuncQ::one_minus_q_pow(6);
        assert_eq!(scalar(&SymFunc::p(p("2")), &SymFunc::p(p("2")), 3), want);
    }

    #[test]
    fn adjoint_examples() {
        let e1 = eps(1, 2);
        assert_eq!(adjoint_apply(&SymFunc::p(p("1")), &SymFunc::p(p("1")), 2), SymFunc::term(Partition::zero(), e1.clone()));
        assert!(adjoint_apply(&SymFunc::p(p("2")), &SymFunc::p(p("1,1")), 2).is_zero());
        let want = SymFunc::term(p("1"), &RatFuncQ::from_integer(2) * &e1);
        assert_eq!(adjoint_apply(&SymFunc::p(p("1")), &SymFunc::p(p("1,1")), 2), want);
    }

    #[test]
    fn lowering_examples() {
        use crate::laurent::{Monomial, Var};
        let d12 = Monomial::ratio(Var::d(1), Var::d(2));
        let l = LaurentPoly::term(d12.clone(), RatFuncQ::one());
        assert_eq!(lowering_apply(&l, &[2, 2], 2), qn(1, 2).mul(&qn(3, 2)));
        let l2 = LaurentPoly::one().sub(&l);
        let want = g(&p("1,1"), 1).sub(&g(&p("2"), 1));
        assert_eq!(lowering_apply(&l2, &[1, 1], 1), want);
        let l3 = LaurentPoly::term(Monomial::var(Var::d(1), 1), RatFuncQ::one());
        assert!(lowering_apply(&l3, &[0, 1], 1).is_zero());
    }

    #[test]
    fn gram_schmidt_small_cases() {
        assert_eq!(macdonald_gs(&p("1"), 2).unwrap(), qn(1, 2));
        let want = g(&p("1,1"), 1).sub(&g(&p("2"), 1));
        assert_eq!(macdonald_gs(&p("1,1"), 1).unwrap(), want);
        let q21 = macdonald_gs(&p("2,1"), 2).unwrap();
        assert!(scalar(&q21, &g(&p("3"), 2), 2).is_zero());
        let gb = to_g_basis(&q21, 2);
        assert!(gb[&p("2,1")].is_one());
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn norm_single_box() {
        assert_eq!(norm_closed(&p("1"), 3), c(3, 1));
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_jt(&p("3")), qn(3, 1));
        assert_eq!(schur_jt(&p("1,1")), qn(1, 1).mul(&qn(1, 1)).sub(&qn(2, 1)));
        assert_eq!(schur_jt(&p("2,1")), qn(2, 1).mul(&qn(1, 1)).sub(&qn(3, 1)));
    }

    #[test]
    fn limit_examples() {
        let b = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(limit_sym(&qn(1, 3)).unwrap(), RationalSymFunc::term(p("1"), b(3, 1)));
        let want = RationalSymFunc::from_terms([(p("1,1"), b(9, 2)), (p("2"), b(3, 2))]);
        assert_eq!(limit_sym(&qn(2, 3)).unwrap(), want);
        assert_eq!(limit_sym(&macdonald_gs(&p("1,1"), 2).unwrap()).unwrap(), jack_gs(&p("1,1"), 2).unwrap());
    }

    #[test]
    fn g_basis_round_trip_and_rendering() {
        let f = macdonald_gs(&p("1,1"), 1).unwrap();
        let gb = to_g_basis(&f, 1);
        assert_eq!(format_g_basis(&gb), "g[1,1] - g[2]");
        assert_eq!(from_g_basis(&gb, 1), f);
    }

    #[test]
    fn json_round_trip() {
        let f = qn(3, 2);
        let (g2, beta) = SymFunc::from_json(&f.to_json(2)).unwrap();
        assert_eq!((g2, beta), (f, 2));
    }
}
