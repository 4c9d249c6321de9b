//! Constant terms and coefficients of the q-Dyson Laurent polynomial
//! `F_{betas,q}[s;t]`: closed forms, brute-force extraction, and the
//! dominance vanishing scan.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cache::{cached, Cache};
use crate::error::{Error, Result};
use crate::exactq::{qfact, qpoch_rf, qpoch_step, RatFuncQ};
use crate::laurent::{coeff_f, dyson_product, expand_f_capped, split_terms, LaurentPoly, VarKind};
use crate::partitions::{gen_dominance_geq, sorted_desc, Partition};

fn check_betas(betas: &[u32]) -> Result<()> {
    if betas.is_empty() || betas.contains(&0) {
        return Err(Error::InvalidArgument(format!("betas must be a nonempty list of positive integers, got {betas:?}")));
    }
    Ok(())
}

fn total(betas: &[u32]) -> u32 {
    betas.iter().sum()
}

/// `(q;q)_{|betas|} / prod_i (q;q)_{beta_i}`
pub fn ct_product(betas: &[u32]) -> RatFuncQ {
    let den: RatFuncQ = betas.iter().map(|&b| qfact(b)).product();
    &qfact(total(betas)) / &den
}

/// Constant term of the expanded Dyson product.
pub fn ct_brute(betas: &[u32]) -> RatFuncQ {
    dyson_product(betas).ct()
}

/// Constant term of `F[s;1]`, from its `w`-free part.
pub fn ct_f1(betas: &[u32]) -> RatFuncQ {
    coeff_f(betas, &vec![0; betas.len()], &[0])
}

/// Sum of the constant terms of the splitting summands `G_{a,b}`.
pub fn ct_via_splitting(betas: &[u32]) -> RatFuncQ {
    split_terms(betas).par_iter().map(|g| g.polynomial_part.ct()).reduce(RatFuncQ::zero, |a, b| &a + &b)
}

/// The constant term by recursion on the number of variables: removing
/// `z_a` from each splitting summand leaves the Dyson product in the
/// remaining variables times an explicit scalar.
pub fn ct_telescoped(betas: &[u32]) -> RatFuncQ {
    let s = betas.len();
    if s <= 1 {
        return RatFuncQ::one();
    }
    let tot = total(betas) as i64;
    let mut acc = RatFuncQ::zero();
    for a in 0..s {
        let rest: Vec<u32> = betas.iter().enumerate().filter(|&(i, _)| i != a).map(|(_, &b)| b).collect();
        let inner = ct_telescoped(&rest);
        let ba = betas[a] as i64;
        let after: i64 = betas[a + 1..].iter().map(|&b| b as i64).sum();
        let mut sum_b = RatFuncQ::zero();
        for b in 0..ba {
            let v = &RatFuncQ::q_pow(b * (tot - ba)) / &(&qpoch_rf(-b, b) * &qpoch_rf(1, ba - 1 - b));
            sum_b += &v;
        }
        acc += &(&(&inner * &RatFuncQ::q_pow(after)) * &sum_b);
    }
    acc
}

/// Coefficient of `z_a^n / w_1^n` in `F[s;1]` (`a` is 1-based):
/// `q^{sum_{j>a} beta_j} (1 - q^{beta_a}) (q;q)_{|b| - beta_a} / prod (q;q)_{beta_i}
///  * (q^{|b| - beta_a + n + 1}; q)_{beta_a - 1}`.
pub fn kadell_coeff(betas: &[u32], a: usize, n: u32) -> Result<RatFuncQ> {
    check_betas(betas)?;
    if a == 0 || a > betas.len() || n == 0 {
        return Err(Error::InvalidArgument(format!("need 1 <= a <= {} and n >= 1", betas.len())));
    }
    let ba = betas[a - 1] as i64;
    let rest = total(betas) as i64 - ba;
    let after: i64 = betas[a..].iter().map(|&b| b as i64).sum();
    let den: RatFuncQ = betas.iter().map(|&b| qfact(b)).product();
    let v = &(&(&RatFuncQ::q_pow(after) * &RatFuncQ::one_minus_q_pow(ba)) * &qfact(rest as u32)) / &den;
    Ok(&v * &qpoch_rf(rest + n as i64 + 1, ba - 1))
}

/// The same coefficient by extraction from the expansion.
pub fn kadell_brute(betas: &[u32], a: usize, n: u32) -> RatFuncQ {
    let mut k = vec![0i32; betas.len()];
    k[a - 1] = n as i32;
    coeff_f(betas, &k, &[n])
}

/// Coefficient of `z^lam / w^lam` in `F_{beta,q}[s;s]`, `s = l(lam)`.
pub fn cla(lam: &Partition, beta: u32) -> RatFuncQ {
    let s = lam.len() as i64;
    let b = beta as i64;
    let mults = lam.multiplicities();
    let sq: i64 = mults.values().map(|&m| (m as i64) * (m as i64)).sum();
    let mut acc = RatFuncQ::q_pow(b * (s * s - sq) / 2);
    for &m in mults.values() {
        let m = m as i64;
        acc = &acc * &(&qpoch_step(b, b, m) / &RatFuncQ::one_minus_q_pow(b).pow(m as i32));
    }
    for i in 1..=s {
        let e = lam.part(i as usize) as i64 + (s - i) * b;
        acc = &acc * &(&qpoch_rf(b, e) / &qpoch_rf(1, e));
    }
    acc
}

pub fn cla_brute(lam: &Partition, beta: u32) -> RatFuncQ {
    let k: Vec<i32> = lam.parts().iter().map(|&x| x as i32).collect();
    coeff_f(&vec![beta; lam.len()], &k, lam.parts())
}

/// Truncated expansion of `F[s;t]` with total `w`-inverse degree at most `cap`.
pub fn expansion(betas: &[u32], t: usize, cap: u32, cache: Option<&Cache>) -> Result<LaurentPoly> {
    let params = json!({"betas": betas, "t": t, "cap": cap});
    cached(cache, "expansion", &params, || Ok(expand_f_capped(betas, t, &vec![cap; t], Some(cap))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub monomial: String,
    pub rule: String,
    pub got: String,
    pub expected: String,
}

/// Outcome of [`vanishing_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CTReport {
    pub betas: Vec<u32>,
    pub s: usize,
    pub t: usize,
    pub cap: u32,
    pub checked_monomials: usize,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
}

impl CTReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans every monomial `z^k / w^m` with `|m| <= cap` in the expansion and
/// reports nonzero coefficients with `k^+ >= m^+` failing; for `t = 1`
/// also reports nonzero `z^k / w_1^n` with every `k_i < n`.
pub fn vanishing_scan(betas: &[u32], t: usize, cap: u32, cache: Option<&Cache>) -> Result<CTReport> {
    check_betas(betas)?;
    if t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let start = Instant::now();
    let s = betas.len();
    let f = expansion(betas, t, cap, cache)?;
    let terms: Vec<_> = f.terms().collect();
    let mut violations: Vec<Violation> = terms
        .par_iter()
        .flat_map_iter(|(m, c)| {
            let k: Vec<i64> = m.exps_of(VarKind::Z, s).into_iter().map(i64::from).collect();
            let w: Vec<i64> = m.exps_of(VarKind::W, t).into_iter().map(|e| -i64::from(e)).collect();
            let mut out = Vec::new();
            if !gen_dominance_geq(&sorted_desc(&k), &sorted_desc(&w)) {
                out.push(Violation {
                    monomial: m.to_string(),
                    rule: "dominance".into(),
                    got: c.to_canonical_string(),
                    expected: "0".into(),
                });
            }
            if t == 1 && w[0] >= 1 && k.iter().all(|&x| x < w[0]) {
                out.push(Violation {
                    monomial: m.to_string(),
                    rule: "kadell".into(),
                    got: c.to_canonical_string(),
                    expected: "0".into(),
                });
            }
            out
        })
        .collect();
    violations.sort_by(|a, b| (&a.monomial, &a.rule).cmp(&(&b.monomial, &b.rule)));
    Ok(CTReport {
        betas: betas.to_vec(),
        s,
        t,
        cap,
        checked_monomials: terms.len(),
        violations,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
