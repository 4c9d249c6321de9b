//! Closed-form constructions of Macdonald functions `Q_lam(q, q^beta)`:
//! the lowering-operator formula for (almost) rectangles, the power-sum
//! formula for rectangles, the vertex-operator route, the iterative
//! construction along the rectangular filtration, and the Jack
//! hyperdeterminant.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactq::{qfact, qpoch_step, rising, RatFuncQ};
use crate::linalg::permutations_with_sign;
use crate::partitions::{rect_filtration, Partition};
use crate::symfunc::{
    adjoint_apply, from_g_basis, jack_qn, limit_sym, macdonald_gs, to_g_basis, RationalSymFunc, SymFunc,
};
use crate::vertexop::{epsilon_q, x_product, x_product_comb};

/// Construction used to produce a [`RouteResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    GramSchmidt,
    Lowering,
    Combinatorial,
    Vertex,
    Filtration,
    HyperdetJack,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::GramSchmidt => "gram_schmidt",
            Route::Lowering => "lowering",
            Route::Combinatorial => "combinatorial",
            Route::Vertex => "vertex",
            Route::Filtration => "filtration",
            Route::HyperdetJack => "hyperdet_jack",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gs" | "gram_schmidt" => Route::GramSchmidt,
            "lowering" => Route::Lowering,
            "comb" | "combinatorial" => Route::Combinatorial,
            "vertex" => Route::Vertex,
            "filtration" => Route::Filtration,
            "hyperdet" | "hyperdet_jack" => Route::HyperdetJack,
            _ => return Err(Error::InvalidArgument(format!("unknown route {s:?}"))),
        })
    }
}

/// A Macdonald function together with the constants used to produce it.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteResult {
    pub shape: Partition,
    pub beta: u32,
    pub route: Route,
    pub value: SymFunc,
    pub scalars: BTreeMap<String, RatFuncQ>,
}

impl RouteResult {
    fn new(shape: Partition, beta: u32, route: Route, value: SymFunc) -> Self {
        RouteResult { shape, beta, route, value, scalars: BTreeMap::new() }
    }

    fn with(mut self, name: &str, v: RatFuncQ) -> Self {
        self.scalars.insert(name.to_string(), v);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let scalars: serde_json::Map<String, serde_json::Value> = self
            .scalars
            .iter()
            .map(|(k, v)| (k.clone(), json!(v.to_canonical_string())))
            .collect();
        json!({
            "shape": self.shape.parts(),
            "beta": self.beta,
            "route": self.route.name(),
            "scalars": scalars,
            "value": self.value.to_json(self.beta),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<RouteResult> {
        let bad = |m: &str| Error::Parse(format!("route result: {m}"));
        let shape: Partition = serde_json::from_value(v["shape"].clone())?;
        let beta = v["beta"].as_u64().ok_or_else(|| bad("beta"))? as u32;
        let route: Route = v["route"].as_str().ok_or_else(|| bad("route"))?.parse()?;
        let (value, _) = SymFunc::from_json(&v["value"])?;
        let mut scalars = BTreeMap::new();
        if let Some(m) = v["scalars"].as_object() {
            for (k, s) in m {
                scalars.insert(k.clone(), s.as_str().ok_or_else(|| bad("scalar"))?.parse()?);
            }
        }
        Ok(RouteResult { shape, beta, route, value, scalars })
    }
}

/// `C_rho = q^{st beta} (q;q^beta)_s (q;q^beta)_t (q;q)_{(s+t)beta}
///   / ((q;q^beta)_{s+t} (q;q)_beta^{s+t})`.
pub fn c_rho(s: u32, t: u32, beta: u32) -> RatFuncQ {
    let b = beta as i64;
    let step = |n: u32| qpoch_step(1, b, n as i64);
    let num = &(&(&RatFuncQ::q_pow((s * t) as i64 * b) * &step(s)) * &step(t)) * &qfact((s + t) * beta);
    let den = &step(s + t) * &qfact(beta).pow((s + t) as i32);
    &num / &den
}

/// Closed form of `<Q_rho, Q_rho>` for `rho = ((k+1)^t, k^s)`.
pub fn rect_norm_formula(k: u32, s: u32, t: u32, beta: u32) -> RatFuncQ {
    let (k, s, t, b) = (k as i64, s as i64, t as i64, beta as i64);
    let p = qpoch_step;
    let f1 = &(&p(s * b, 1, k) * &p(b, b, s - 1)) / &(&p(1, 1, k - 1) * &p(k, b, s));
    let f2 = &(&p(1 + (s + t) * b, 1, k) * &p(1 + (s + 1) * b, b, t - 1))
        / &(&p(2 + s * b, 1, k - 1) * &p(k + 1 + s * b, b, t));
    let f3 = &p(b, b, t) / &p(1, b, t);
    &(&f1 * &f2) * &f3
}

/// Shape `((k+1)^t, k^s)` from its parameters, rejecting `s = 0` or `k = 0`.
pub fn almost_rect_shape(k: u32, s: u32, t: u32) -> Result<Partition> {
    if k == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!("almost rectangle needs k, s > 0 (got k={k}, s={s})")));
    }
    Ok(Partition::almost_rect(k, s, t))
}

/// Coefficients of `(x;q)_beta (q/x;q)_beta`, indexed by exponent `e + beta`.
fn pair_factor(beta: u32) -> Vec<RatFuncQ> {
    let b = beta as usize;
    let mut c = vec![RatFuncQ::zero(); 2 * b + 1];
    c[b] = RatFuncQ::one();
    for k in 0..beta as i64 {
        // times (1 - q^k x)
        let f = RatFuncQ::q_pow(k);
        for e in (1..c.len()).rev() {
            let d = &c[e - 1] * &f;
            c[e] -= &d;
        }
        // times (1 - q^{k+1} / x)
        let f = RatFuncQ::q_pow(k + 1);
        for e in 0..c.len() - 1 {
            let d = &c[e + 1] * &f;
            c[e] -= &d;
        }
    }
    c
}

/// `prod_{i<j} (D_i/D_j;q)_beta (q D_j/D_i;q)_beta . Q_{lam_1} ... Q_{lam_n}` in
/// the `g` basis. Pairs are multiplied in lexicographic order; exponent
/// vectors that can no longer reach `lam_i - |lam| <= e_i <= lam_i` are dropped.
pub fn lowering_product_g(lam: &Partition, beta: u32) -> BTreeMap<Partition, RatFuncQ> {
    let n = lam.len();
    let total = lam.weight() as i32;
    let b = beta as i32;
    let parts: Vec<i32> = lam.parts().iter().map(|&x| x as i32).collect();
    let pf = pair_factor(beta);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut remaining = vec![0i32; n];
    for &(i, j) in &pairs {
        remaining[i] += 1;
        remaining[j] += 1;
    }
    let mut dp: HashMap<Vec<i32>, RatFuncQ> = HashMap::from([(vec![0; n], RatFuncQ::one())]);
    for &(i, j) in &pairs {
        remaining[i] -= 1;
        remaining[j] -= 1;
        let feasible = |e: &[i32], v: usize| {
            let slack = remaining[v] * b;
            e[v] + slack >= parts[v] - total && e[v] - slack <= parts[v]
        };
        let mut next: HashMap<Vec<i32>, RatFuncQ> = HashMap::new();
        for (e, c) in &dp {
            for (k, f) in pf.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let d = k as i32 - b;
                let mut e2 = e.clone();
                e2[i] += d;
                e2[j] -= d;
                if !feasible(&e2, i) || !feasible(&e2, j) {
                    continue;
                }
                let v = c * f;
                match next.get_mut(&e2) {
                    Some(x) => *x += &v,
                    None => {
                        next.insert(e2, v);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    let mut out: BTreeMap<Partition, RatFuncQ> = BTreeMap::new();
    for (e, c) in dp {
        let idx: Vec<i32> = parts.iter().zip(&e).map(|(l, d)| l - d).collect();
        if idx.iter().any(|&x| x < 0) {
            continue;
        }
        let key = Partition::from_unsorted(idx.into_iter().map(|x| x as u32).collect());
        match out.get_mut(&key) {
            Some(x) => *x += &c,
            None => {
                out.insert(key, c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Gram–Schmidt route.
pub fn mac_gs(lam: &Partition, beta: u32) -> Result<RouteResult> {
    Ok(RouteResult::new(lam.clone(), beta, Route::GramSchmidt, macdonald_gs(lam, beta)?))
}

/// Lowering-operator formula for `rho = ((k+1)^t, k^s)`, divided by `C_rho`.
pub fn mac_rect_lowering(k: u32, s: u32, t: u32, beta: u32) -> Result<RouteResult> {
    let rho = almost_rect_shape(k, s, t)?;
    let c = c_rho(s, t, beta);
    let mut gc = lowering_product_g(&rho, beta);
    let lead = gc.get(&rho).cloned().unwrap_or_else(RatFuncQ::zero);
    if lead != c {
        return Err(Error::Normalization(format!("coefficient of g_{rho} is {lead}, expected {c}")));
    }
    let inv = c.recip();
    for v in gc.values_mut() {
        *v = &*v * &inv;
    }
    Ok(RouteResult::new(rho, beta, Route::Lowering, from_g_basis(&gc, beta)).with("C_rho", c))
}

/// `(-1)^{beta s(s-1)/2} q^{beta(beta+1)s(s-1)/4} (q;q)_beta^s / (q;q)_{s beta}`
pub fn comb_prefactor(s: u32, beta: u32) -> RatFuncQ {
    let (b, n) = (beta as i64, s as i64);
    let mut v = RatFuncQ::q_pow(b * (b + 1) * n * (n - 1) / 4);
    if (b * n * (n - 1) / 2) % 2 == 1 {
        v = -v;
    }
    &(&v * &qfact(beta).pow(s as i32)) / &qfact(s * beta)
}

/// Power-sum formula for the rectangle `(k^s)`.
pub fn mac_rect_comb(k: u32, s: u32, beta: u32) -> Result<RouteResult> {
    let r = almost_rect_shape(k, s, 0)?;
    let st = x_product_comb(&r, beta, -(s as i64));
    let pre = comb_prefactor(s, beta);
    let value = st.sector(s as i64).scale(&pre);
    Ok(RouteResult::new(r, beta, Route::Combinatorial, value).with("prefactor", pre))
}

/// Vertex-operator route: `X_{-rho}.1 ⊗ e^{-(s+t) eta/2}` divided by
/// `eps_q(beta, s+t) C_rho`.
pub fn mac_vertex(k: u32, s: u32, t: u32, beta: u32) -> Result<RouteResult> {
    let rho = almost_rect_shape(k, s, t)?;
    let n = s + t;
    let st = x_product(&rho, beta);
    let e = epsilon_q(beta, n);
    let c = c_rho(s, t, beta);
    let value = st.sector(n as i64).scale(&(&e * &c).recip());
    Ok(RouteResult::new(rho, beta, Route::Vertex, value).with("C_rho", c).with("eps_q", e))
}

/// Source of the rectangle functions fed into [`mac_filtration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RectSource {
    #[default]
    Lowering,
    GramSchmidt,
}

fn rect_function(k: u32, s: u32, beta: u32, src: RectSource) -> Result<SymFunc> {
    match src {
        RectSource::Lowering => Ok(mac_rect_lowering(k, s, 0, beta)?.value),
        RectSource::GramSchmidt => macdonald_gs(&Partition::rect(k, s), beta),
    }
}

/// Iterative construction along the rectangular filtration
/// `R_1, ..., R_r` of `lam`:
/// `((f_r^*.f_{r-1})^* ... .f_2)^*.f_1`, normalized to have `g_lam`
/// coefficient 1. The normalizing constant is reported as `c_lambda`.
pub fn mac_filtration(lam: &Partition, beta: u32, src: RectSource) -> Result<RouteResult> {
    if lam.is_zero() {
        return Err(Error::ZeroPartition);
    }
    let rects = rect_filtration(lam)?;
    let fs: Vec<SymFunc> = rects.iter().map(|r| rect_function(r.k, r.s, beta, src)).collect::<Result<_>>()?;
    let mut u = fs.last().expect("nonempty filtration").clone();
    for f in fs[..fs.len() - 1].iter().rev() {
        u = adjoint_apply(&u, f, beta);
    }
    let c = to_g_basis(&u, beta).remove(lam).unwrap_or_else(RatFuncQ::zero);
    if c.is_zero() {
        return Err(Error::Normalization(format!("filtration for {lam} has zero g-coefficient")));
    }
    let value = u.scale(&c.recip());
    Ok(RouteResult::new(lam.clone(), beta, Route::Filtration, value).with("c_lambda", c))
}

/// Result of the Jack hyperdeterminant route, over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct JackResult {
    pub shape: Partition,
    pub beta: u32,
    pub value: RationalSymFunc,
    pub constant: BigRational,
}

impl JackResult {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .value
            .terms()
            .map(|(l, c)| json!({"partition": l.parts(), "coeff": c.to_string()}))
            .collect();
        json!({
            "shape": self.shape.parts(),
            "beta": self.beta,
            "route": Route::HyperdetJack.name(),
            "scalars": {"constant": self.constant.to_string()},
            "value": {"basis": "p", "beta": self.beta, "terms": terms},
        })
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(1/beta)_s (1/beta)_t / (1/beta)_{s+t} * ((s+t) beta)! / (beta!)^{s+t}`
pub fn hyperdet_constant(s: u32, t: u32, beta: u32) -> BigRational {
    let x = BigRational::new(BigInt::one(), BigInt::from(beta));
    let fact = |n: u32| (1..=n as i64).fold(BigRational::one(), |a, k| a * rat(k));
    rising(&x, s) * rising(&x, t) / rising(&x, s + t) * fact((s + t) * beta) / fact(beta).pow((s + t) as i32)
}

/// Signed distribution of `sum_j sigma_j(i)` over `m`-tuples of permutations.
fn perm_sum_distribution(n: usize, m: u32) -> HashMap<Vec<i32>, BigInt> {
    let perms = permutations_with_sign(n);
    let mut acc: HashMap<Vec<i32>, BigInt> = HashMap::from([(vec![0; n], BigInt::one())]);
    for _ in 0..m {
        let mut next: HashMap<Vec<i32>, BigInt> = HashMap::new();
        for (v, c) in &acc {
            for (p, sg) in &perms {
                let w: Vec<i32> = v.iter().zip(p).map(|(a, &b)| a + b as i32 + 1).collect();
                *next.entry(w).or_default() += c * BigInt::from(*sg);
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// Jack function `Q_rho(1/beta)` for `rho = ((k+1)^t, k^s)` by the
/// hyperdeterminant: a signed sum over `2 beta`-tuples of permutations of
/// products of one-row Jack functions, divided by [`hyperdet_constant`].
pub fn jack_hyperdet(k: u32, s: u32, t: u32, beta: u32) -> Result<JackResult> {
    let rho = almost_rect_shape(k, s, t)?;
    let n = (s + t) as usize;
    let lows = perm_sum_distribution(n, beta);
    let mut shifts: HashMap<Vec<i32>, BigInt> = HashMap::new();
    for (a, ca) in &lows {
        for (b, cb) in &lows {
            let e: Vec<i32> = b.iter().zip(a).map(|(x, y)| x - y).collect();
            *shifts.entry(e).or_default() += ca * cb;
        }
    }
    let mut rows: HashMap<u32, RationalSymFunc> = HashMap::new();
    let mut total = RationalSymFunc::zero();
    let mut keys: Vec<_> = shifts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    keys.sort();
    for (e, c) in keys {
        let idx: Vec<i64> = rho.parts().iter().zip(&e).map(|(&r, &d)| r as i64 + d as i64).collect();
        if idx.iter().any(|&x| x < 0) {
            continue;
        }
        let mut term = RationalSymFunc::term(Partition::zero(), BigRational::from_integer(c));
        for x in idx {
            let r = rows.entry(x as u32).or_insert_with(|| jack_qn(x as u32, beta));
            term = term.mul(r);
        }
        total = total.add(&term);
    }
    let constant = hyperdet_constant(s, t, beta);
    let value = total.scale(&(BigRational::one() / &constant));
    Ok(JackResult { shape: rho, beta, value, constant })
}

/// `q -> 1` limit of the lowering route.
pub fn jack_via_lowering(k: u32, s: u32, t: u32, beta: u32) -> Result<RationalSymFunc> {
    limit_sym(&mac_rect_lowering(k, s, t, beta)?.value)
}

/// Runs `route` on `shape`, rejecting shapes the route does not cover.
pub fn compute(shape: &Partition, beta: u32, route: Route) -> Result<RouteResult> {
    let almost = || shape.as_almost_rect().ok_or_else(|| Error::NotAlmostRectangular(shape.clone()));
    match route {
        Route::GramSchmidt => mac_gs(shape, beta),
        Route::Filtration => mac_filtration(shape, beta, RectSource::Lowering),
        Route::Lowering => {
            let (k, s, t) = almost()?;
            mac_rect_lowering(k, s, t, beta)
        }
        Route::Vertex => {
            let (k, s, t) = almost()?;
            mac_vertex(k, s, t, beta)
        }
        Route::Combinatorial => {
            if !shape.is_rectangular() || shape.is_zero() {
                return Err(Error::NotRectangular(shape.clone()));
            }
            mac_rect_comb(shape.part(1), shape.len() as u32, beta)
        }
        Route::HyperdetJack => Err(Error::InvalidArgument("the hyperdeterminant route is over Q; use jack_hyperdet".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::PolyQ;
    use crate::symfunc::{format_g_basis, jack_gs, norm_closed, scalar, schur_jt};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn c_rho_values() {
        assert_eq!(c_rho(1, 0, 3), RatFuncQ::one());
        assert_eq!(c_rho(2, 0, 1), RatFuncQ::from_poly(&PolyQ::from_ints(&[1, 1])));
        for s in 1..=3 {
            for b in 1..=3 {
                assert_eq!(c_rho(s, 0, b), &qfact(s * b) / &qfact(b).pow(s as i32));
            }
        }
    }

    #[test]
    fn pair_factor_beta_one() {
        // (1 - x)(1 - q/x) = -q/x + (1 + q) - x
        let c = pair_factor(1);
        assert_eq!(c[0], -RatFuncQ::q_pow(1));
        assert_eq!(c[1], RatFuncQ::from_poly(&PolyQ::from_ints(&[1, 1])));
        assert_eq!(c[2], -RatFuncQ::one());
    }

    #[test]
    fn lowering_small_cases() {
        let r = mac_rect_lowering(1, 2, 0, 1).unwrap();
        assert_eq!(format_g_basis(&to_g_basis(&r.value, 1)), "g[1,1] - g[2]");
        for k in 1..=3 {
            assert_eq!(mac_rect_lowering(k, 1, 0, 2).unwrap().value, crate::symfunc::qn(k, 2));
        }
    }

    #[test]
    fn lowering_matches_gram_schmidt() {
        for (k, s, t, b) in [(1, 2, 0, 1), (1, 2, 0, 2), (1, 1, 1, 1), (1, 1, 1, 2), (2, 2, 0, 2), (1, 2, 1, 2), (1, 3, 0, 1)] {
            let r = mac_rect_lowering(k, s, t, b).unwrap();
            assert_eq!(r.value, macdonald_gs(&r.shape, b).unwrap(), "{k} {s} {t} {b}");
        }
    }

    #[test]
    fn comb_matches_gram_schmidt() {
        for (k, s, b) in [(1, 2, 1), (2, 2, 2), (1, 2, 2), (3, 1, 2), (1, 3, 1)] {
            let r = mac_rect_comb(k, s, b).unwrap();
            assert_eq!(r.value, macdonald_gs(&r.shape, b).unwrap(), "{k} {s} {b}");
        }
        let e = epsilon_q(1, 2);
        let c = c_rho(2, 0, 1);
        assert_eq!(comb_prefactor(2, 1), (&e * &c).recip());
    }

    #[test]
    fn vertex_matches_gram_schmidt() {
        for (k, s, t, b) in [(1, 2, 0, 1), (1, 1, 1, 2), (2, 2, 0, 1), (1, 2, 1, 1)] {
            let r = mac_vertex(k, s, t, b).unwrap();
            assert_eq!(r.value, macdonald_gs(&r.shape, b).unwrap(), "{k} {s} {t} {b}");
        }
    }

    #[test]
    fn filtration_examples() {
        let r = mac_filtration(&p("2,1"), 1, RectSource::Lowering).unwrap();
        assert_eq!(r.value, schur_jt(&p("2,1")));
        assert!(!r.scalars["c_lambda"].is_zero());
        let r = mac_filtration(&p("3,1"), 2, RectSource::GramSchmidt).unwrap();
        assert_eq!(r.value, macdonald_gs(&p("3,1"), 2).unwrap());
        let r = mac_filtration(&p("2,2"), 2, RectSource::Lowering).unwrap();
        assert_eq!(r.scalars["c_lambda"], RatFuncQ::one());
    }

    #[test]
    fn rect_norm_matches_closed_norm() {
        for (k, s, t) in [(1, 1, 0), (1, 2, 0), (2, 1, 1), (1, 1, 2), (2, 2, 0), (1, 2, 1), (3, 1, 0)] {
            for b in 1..=2 {
                let rho = Partition::almost_rect(k, s, t);
                assert_eq!(rect_norm_formula(k, s, t, b), norm_closed(&rho, b), "{k} {s} {t} {b}");
            }
        }
        let q = macdonald_gs(&p("2,1"), 2).unwrap();
        assert_eq!(scalar(&q, &q, 2), rect_norm_formula(1, 1, 1, 2));
    }

    #[test]
    fn hyperdet_small() {
        assert_eq!(hyperdet_constant(2, 0, 1), rat(2));
        for (k, s, t, b) in [(1, 2, 0, 1), (1, 1, 1, 1), (1, 2, 0, 2), (2, 2, 0, 1)] {
            let h = jack_hyperdet(k, s, t, b).unwrap();
            assert_eq!(h.value, jack_gs(&h.shape, b).unwrap(), "{k} {s} {t} {b}");
        }
        let h = jack_hyperdet(2, 2, 0, 1).unwrap();
        assert_eq!(h.value, limit_sym(&schur_jt(&p("2,2"))).unwrap());
    }

    #[test]
    fn route_json_round_trip() {
        let r = mac_rect_lowering(1, 1, 1, 2).unwrap();
        let back = RouteResult::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn compute_rejects_wrong_shapes() {
        assert!(matches!(compute(&p("2,1"), 1, Route::Combinatorial), Err(Error::NotRectangular(_))));
        assert!(matches!(compute(&p("3,1"), 1, Route::Lowering), Err(Error::NotAlmostRectangular(_))));
    }
}
