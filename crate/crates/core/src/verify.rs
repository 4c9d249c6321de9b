//! Verification suites: each suite expands into independent cases that run
//! in parallel and are reported sorted by case key.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::identities;
use crate::macroutes::{
    jack_hyperdet, jack_via_lowering, mac_filtration, mac_rect_comb, mac_rect_lowering, mac_vertex, rect_norm_formula,
    RectSource,
};
use crate::partitions::{partitions, partitions_bounded, Partition};
use crate::qdyson;
use crate::symfunc::{jack_gs, macdonald_gs, norm_closed, scalar, schur_jt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Identities,
    Splitting,
    CtProduct,
    Kadell,
    Fcla,
    Routes,
    Norms,
    Jack,
    Filtration,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Identities,
        Suite::Splitting,
        Suite::CtProduct,
        Suite::Kadell,
        Suite::Fcla,
        Suite::Routes,
        Suite::Norms,
        Suite::Jack,
        Suite::Filtration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Splitting => "splitting",
            Suite::CtProduct => "ctproduct",
            Suite::Kadell => "kadell",
            Suite::Fcla => "fcla",
            Suite::Routes => "routes",
            Suite::Norms => "norms",
            Suite::Jack => "jack",
            Suite::Filtration => "filtration",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_weight: u32,
    pub max_beta: u32,
    pub max_s: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_weight: 6, max_beta: 2, max_s: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub suite: String,
    pub case: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub limits: Limits,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CaseResult>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type Check = Box<dyn Fn() -> Result<bool> + Send + Sync>;

struct Case {
    suite: Suite,
    key: String,
    check: Check,
}

fn case(suite: Suite, key: String, check: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Case {
    Case { suite, key, check: Box::new(check) }
}

/// All tuples `(b_1..b_s)` with `1 <= s <= max_s`, `1 <= b_i <= max_beta`.
pub fn beta_tuples(max_s: u32, max_beta: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_s {
        layer = layer
            .iter()
            .flat_map(|v| {
                (1..=max_beta).map(move |b| {
                    let mut w = v.clone();
                    w.push(b);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Almost-rectangular `(k, s, t)` with `t > 0` and weight at most `w`.
pub fn almost_rects(w: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for k in 1..=w {
        for s in 1..=w {
            for t in 1..=w {
                if k * s + (k + 1) * t <= w {
                    out.push((k, s, t));
                }
            }
        }
    }
    out
}

/// Rectangles `(k, s)` with `ks <= w`.
pub fn rects(w: u32) -> Vec<(u32, u32)> {
    (1..=w).flat_map(|k| (1..=w / k).map(move |s| (k, s))).collect()
}

fn tag(b: &[u32]) -> String {
    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn suite_cases(suite: Suite, l: Limits, cache: Option<&Cache>) -> Vec<Case> {
    use Suite::*;
    let mut v = Vec::new();
    let betas_list = beta_tuples(l.max_s, l.max_beta);
    match suite {
        Identities => {
            for beta in 0..=l.max_beta + 2 {
                for m in 0..=l.max_weight {
                    v.push(case(suite, format!("inv_poch m={m} beta={beta}"), move || Ok(identities::inv_poch_agree(m, beta))));
                }
            }
            for m in 0..=l.max_weight {
                v.push(case(suite, format!("an m={m}"), move || Ok(identities::an_identity(m))));
            }
            for beta in 1..=l.max_beta + 2 {
                v.push(case(suite, format!("zw beta={beta}"), move || Ok(identities::zw_identity(beta))));
            }
            for b in 0..=l.max_beta {
                v.push(case(suite, format!("interchange b={b}"), move || {
                    Ok((-2..=2).all(|k| (-2..=2).all(|m| identities::interchange(b, k, m))))
                }));
            }
            for ba in 1..=l.max_beta {
                for bo in 1..=l.max_beta {
                    v.push(case(suite, format!("cancel {ba},{bo}"), move || {
                        Ok((0..ba).all(|b| identities::cancel_before(ba, bo, b) && identities::cancel_after(ba, bo, b)))
                    }));
                }
            }
        }
        Splitting => {
            for b in betas_list {
                let key = format!("split [{}]", tag(&b));
                v.push(case(suite, key, move || {
                    Ok(identities::splitting_cleared(&b) && identities::splitting_truncated(&b, 2))
                }));
            }
        }
        CtProduct => {
            for b in betas_list {
                v.push(case(suite, format!("ct [{}]", tag(&b)), move || {
                    let want = qdyson::ct_product(&b);
                    Ok(qdyson::ct_brute(&b) == want
                        && qdyson::ct_f1(&b) == want
                        && qdyson::ct_via_splitting(&b) == want
                        && qdyson::ct_telescoped(&b) == want)
                }));
            }
        }
        Kadell => {
            let nmax = l.max_weight.clamp(1, 3);
            for b in betas_list {
                let s = b.len();
                let c = cache.cloned();
                let bb = b.clone();
                v.push(case(suite, format!("kadell-vanish [{}]", tag(&b)), move || {
                    Ok(qdyson::vanishing_scan(&bb, 1, nmax, c.as_ref())?.ok())
                }));
                for a in 1..=s {
                    for n in 1..=nmax {
                        let bb = b.clone();
                        v.push(case(suite, format!("kadell [{}] a={a} n={n}", tag(&b)), move || {
                            Ok(qdyson::kadell_coeff(&bb, a, n)? == qdyson::kadell_brute(&bb, a, n))
                        }));
                    }
                }
            }
        }
        Fcla => {
            let cap = l.max_weight.min(4);
            for b in betas_list {
                for t in 1..=2usize {
                    let c = cache.cloned();
                    let bb = b.clone();
                    v.push(case(suite, format!("scan [{}] t={t}", tag(&b)), move || {
                        Ok(qdyson::vanishing_scan(&bb, t, cap, c.as_ref())?.ok())
                    }));
                }
            }
            for n in 1..=l.max_weight.min(4) {
                for lam in partitions_bounded(n, Some(l.max_s as usize), None) {
                    for beta in 1..=l.max_beta {
                        let lm = lam.clone();
                        v.push(case(suite, format!("cla {lam} beta={beta}"), move || {
                            Ok(qdyson::cla(&lm, beta) == qdyson::cla_brute(&lm, beta))
                        }));
                    }
                }
            }
        }
        Routes => {
            for beta in 1..=l.max_beta {
                for (k, s) in rects(l.max_weight) {
                    v.push(case(suite, format!("rect ({k}^{s}) beta={beta}"), move || {
                        let gs = macdonald_gs(&Partition::rect(k, s), beta)?;
                        Ok(mac_rect_lowering(k, s, 0, beta)?.value == gs
                            && mac_rect_comb(k, s, beta)?.value == gs
                            && mac_vertex(k, s, 0, beta)?.value == gs)
                    }));
                }
                for (k, s, t) in almost_rects(l.max_weight) {
                    v.push(case(suite, format!("almost {} beta={beta}", Partition::almost_rect(k, s, t)), move || {
                        let gs = macdonald_gs(&Partition::almost_rect(k, s, t), beta)?;
                        Ok(mac_rect_lowering(k, s, t, beta)?.value == gs && mac_vertex(k, s, t, beta)?.value == gs)
                    }));
                }
            }
            for n in 1..=l.max_weight {
                for lam in partitions(n) {
                    let lm = lam.clone();
                    v.push(case(suite, format!("schur {lam}"), move || Ok(macdonald_gs(&lm, 1)? == schur_jt(&lm))));
                }
            }
        }
        Norms => {
            for beta in 1..=l.max_beta {
                for n in 1..=l.max_weight {
                    for lam in partitions(n) {
                        let lm = lam.clone();
                        v.push(case(suite, format!("norm {lam} beta={beta}"), move || {
                            let qf = macdonald_gs(&lm, beta)?;
                            let nv = norm_closed(&lm, beta);
                            let ok = scalar(&qf, &qf, beta) == nv;
                            Ok(ok && lm.as_almost_rect().is_none_or(|(k, s, t)| rect_norm_formula(k, s, t, beta) == nv))
                        }));
                    }
                }
            }
        }
        Jack => {
            for beta in 1..=l.max_beta {
                let max_rows = if beta == 1 { 4 } else { 3 };
                let shapes = rects(l.max_weight)
                    .into_iter()
                    .map(|(k, s)| (k, s, 0))
                    .chain(almost_rects(l.max_weight))
                    .filter(|&(_, s, t)| s + t <= max_rows);
                for (k, s, t) in shapes {
                    v.push(case(suite, format!("hyperdet {} beta={beta}", Partition::almost_rect(k, s, t)), move || {
                        let h = jack_hyperdet(k, s, t, beta)?;
                        Ok(h.value == jack_via_lowering(k, s, t, beta)? && h.value == jack_gs(&h.shape, beta)?)
                    }));
                }
            }
        }
        Filtration => {
            for beta in 1..=l.max_beta {
                for n in 1..=l.max_weight {
                    for lam in partitions(n) {
                        let lm = lam.clone();
                        v.push(case(suite, format!("filtration {lam} beta={beta}"), move || {
                            let r = mac_filtration(&lm, beta, RectSource::Lowering)?;
                            Ok(!r.scalars["c_lambda"].is_zero() && r.value == macdonald_gs(&lm, beta)?)
                        }));
                    }
                }
            }
        }
        All => {
            for s in Suite::EACH {
                v.extend(suite_cases(s, l, cache));
            }
        }
    }
    v
}

/// Runs `suite` within `limits`; failures (including errors) are collected,
/// sorted by suite and case key.
pub fn run(suite: Suite, limits: Limits, cache: Option<&Cache>) -> VerifyReport {
    let start = Instant::now();
    let cases = suite_cases(suite, limits, cache);
    let mut results: Vec<CaseResult> = cases
        .par_iter()
        .map(|c| {
            let (ok, detail) = match (c.check)() {
                Ok(true) => (true, None),
                Ok(false) => (false, Some("mismatch".to_string())),
                Err(e) => (false, Some(e.to_string())),
            };
            CaseResult { suite: c.suite.name().to_string(), case: c.key.clone(), ok, detail }
        })
        .collect();
    results.sort_by(|a, b| (&a.suite, &a.case).cmp(&(&b.suite, &b.case)));
    let passed = results.iter().filter(|r| r.ok).count();
    let failures: Vec<CaseResult> = results.into_iter().filter(|r| !r.ok).collect();
    VerifyReport {
        suite: suite.name().to_string(),
        limits,
        passed,
        failed: failures.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_and_shapes() {
        assert_eq!(beta_tuples(2, 2).len(), 6);
        assert_eq!(rects(4), vec![(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1), (4, 1)]);
        assert_eq!(almost_rects(3), vec![(1, 1, 1)]);
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let l = Limits { max_weight: 3, max_beta: 1, max_s: 2 };
        for s in [Suite::Identities, Suite::CtProduct, Suite::Routes, Suite::Filtration] {
            let r = run(s, l, None);
            assert!(r.ok(), "{:?}", r.failures);
            assert!(r.passed > 0);
        }
    }
}
