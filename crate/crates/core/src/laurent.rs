//! Sparse Laurent polynomials over `Q(q)` in the variables `z_i`, `w_j` and
//! `D_i`, the truncated expansion of
//!
//! ```text
//! F_{beta,q}[s;t] = prod_{i<j} (z_i/z_j;q)_{beta_i} (q z_j/z_i;q)_{beta_j}
//!                   * prod_{i,j} (z_i/w_j;q)_{beta_i}^{-1}
//! ```
//!
//! and its splitting into the terms `G_{a,b}` for `t = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactq::{qfact, qpoch_rf, RatFuncQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Z,
    W,
    D,
}

/// A variable `z_i`, `w_j` or `D_i` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub kind: VarKind,
    pub index: u16,
}

impl Var {
    pub fn z(i: usize) -> Var {
        Var { kind: VarKind::Z, index: i as u16 }
    }
    pub fn w(j: usize) -> Var {
        Var { kind: VarKind::W, index: j as u16 }
    }
    pub fn d(i: usize) -> Var {
        Var { kind: VarKind::D, index: i as u16 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            VarKind::Z => 'z',
            VarKind::W => 'w',
            VarKind::D => 'D',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Var> {
        let mut ch = s.chars();
        let kind = match ch.next() {
            Some('z') => VarKind::Z,
            Some('w') => VarKind::W,
            Some('D') => VarKind::D,
            _ => return Err(Error::Parse(format!("bad variable `{s}`"))),
        };
        let index = ch.as_str().parse().map_err(|_| Error::Parse(format!("bad variable `{s}`")))?;
        Ok(Var { kind, index })
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, i32); 8]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Collects pairs, summing repeated variables and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Monomial {
        let mut v: SmallVec<[(Var, i32); 8]> = pairs.into_iter().collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 8]> = SmallVec::new();
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    /// `x_a / x_b`-style ratio of two variables.
    pub fn ratio(num: Var, den: Var) -> Monomial {
        Monomial::from_pairs([(num, 1), (den, -1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out: SmallVec<[(Var, i32); 8]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Sum of exponents over variables of one kind.
    pub fn degree_in(&self, kind: VarKind) -> i32 {
        self.0.iter().filter(|p| p.0.kind == kind).map(|p| p.1).sum()
    }

    /// Exponent vector `(e_1, ..., e_n)` of one kind.
    pub fn exps_of(&self, kind: VarKind, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        for &(x, e) in &self.0 {
            if x.kind == kind && (1..=n).contains(&(x.index as usize)) {
                v[x.index as usize - 1] = e;
            }
        }
        v
    }

    /// Largest index of a variable of the given kind.
    pub fn max_index(&self, kind: VarKind) -> usize {
        self.0.iter().filter(|p| p.0.kind == kind).map(|p| p.0.index as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse map from monomials to nonzero coefficients in `Q(q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: HashMap<Monomial, RatFuncQ>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RatFuncQ::one())
    }

    pub fn constant(c: RatFuncQ) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: RatFuncQ) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
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

    pub fn coeff(&self, m: &Monomial) -> RatFuncQ {
        self.terms.get(m).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    /// Constant term.
    pub fn ct(&self) -> RatFuncQ {
        self.coeff(&Monomial::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFuncQ)> {
        self.terms.iter()
    }

    /// Terms sorted by monomial.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &RatFuncQ)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFuncQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &RatFuncQ) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        self.mul_filtered(o, |_| true)
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, o: &LaurentPoly, keep: impl Fn(&Monomial) -> bool) -> LaurentPoly {
        let mut r = LaurentPoly { terms: HashMap::with_capacity(self.len().max(o.len())) };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m = a.mul(b);
                if keep(&m) {
                    r.add_term(m, x * y);
                }
            }
        }
        r
    }

    pub fn retain(&mut self, keep: impl Fn(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    /// `(q^e x; q)_n = prod_{k<n} (1 - q^{e+k} x)` for a monomial `x`.
    pub fn poch(x: &Monomial, e: i64, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for k in 0..n as i64 {
            let mut f = LaurentPoly::one();
            f.add_term(x.clone(), -RatFuncQ::q_pow(e + k));
            acc = acc.mul(&f);
        }
        acc
    }

    /// Canonical text form, one term per monomial in sorted order.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("{} * {}", c.to_canonical_string(), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sorted_terms().into_iter().map(|(m, c)| format!("({c}) * {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: RatFuncQ,
    exps: BTreeMap<String, i32>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson { coeff: c.clone(), exps: m.iter().map(|(v, e)| (v.to_string(), e)).collect() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for t in v {
            let mut pairs = Vec::with_capacity(t.exps.len());
            for (k, e) in t.exps {
                pairs.push((k.parse::<Var>().map_err(serde::de::Error::custom)?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), t.coeff);
        }
        Ok(p)
    }
}

/// Coefficient of `target` in `a * b`, without forming the product.
pub fn coeff_of_product(a: &LaurentPoly, b: &LaurentPoly, target: &Monomial) -> RatFuncQ {
    let mut acc = RatFuncQ::zero();
    for (m, x) in a.terms() {
        let need = target.mul(&m.inv());
        if let Some(y) = b.terms.get(&need) {
            acc += &(x * y);
        }
    }
    acc
}

/// `(x;q)_beta^{-1}` as `prod_{b<beta} sum_a (q^b x)^a`, truncated to `x`-degree `cap`.
/// Returned as the coefficient list of `x^0, ..., x^cap`.
pub fn inv_poch_series(beta: u32, cap: u32) -> Vec<RatFuncQ> {
    let cap = cap as usize;
    let mut acc = vec![RatFuncQ::zero(); cap + 1];
    acc[0] = RatFuncQ::one();
    for b in 0..beta as i64 {
        let geo: Vec<RatFuncQ> = (0..=cap as i64).map(|a| RatFuncQ::q_pow(a * b)).collect();
        let mut next = vec![RatFuncQ::zero(); cap + 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, g) in geo.iter().enumerate().take(cap + 1 - i) {
                next[i + j] += &(x * g);
            }
        }
        acc = next;
    }
    acc
}

/// `prod_{i<j} (z_i/z_j;q)_{beta_i} (q z_j/z_i;q)_{beta_j}`.
pub fn dyson_product(betas: &[u32]) -> LaurentPoly {
    dyson_product_except(betas, None)
}

/// The same product over pairs avoiding the index `skip` (1-based).
pub fn dyson_product_except(betas: &[u32], skip: Option<usize>) -> LaurentPoly {
    let s = betas.len();
    let mut acc = LaurentPoly::one();
    for i in 1..=s {
        for j in i + 1..=s {
            if skip == Some(i) || skip == Some(j) {
                continue;
            }
            let f = LaurentPoly::poch(&Monomial::ratio(Var::z(i), Var::z(j)), 0, betas[i - 1])
                .mul(&LaurentPoly::poch(&Monomial::ratio(Var::z(j), Var::z(i)), 1, betas[j - 1]));
            acc = acc.mul(&f);
        }
    }
    acc
}

/// Truncated expansion of `F_{betas,q}[s;t]` keeping every monomial whose
/// `w_j^{-1}` degree is at most `wcaps[j]` (and, if given, whose total
/// `w`-inverse degree is at most `total_cap`).
pub fn expand_f_capped(betas: &[u32], t: usize, wcaps: &[u32], total_cap: Option<u32>) -> LaurentPoly {
    assert_eq!(wcaps.len(), t, "one cap per w variable");
    let s = betas.len();
    let keep = |m: &Monomial| total_cap.is_none_or(|c| -m.degree_in(VarKind::W) <= c as i32);
    let mut wpart = LaurentPoly::one();
    for j in 1..=t {
        let cap = wcaps[j - 1];
        for i in 1..=s {
            let ser = inv_poch_series(betas[i - 1], cap);
            let x = Monomial::ratio(Var::z(i), Var::w(j));
            let mut f = LaurentPoly::zero();
            for (a, c) in ser.into_iter().enumerate() {
                f.add_term(x.pow(a as i32), c);
            }
            wpart = wpart.mul_filtered(&f, |m| -m.exp(Var::w(j)) <= cap as i32 && keep(m));
        }
    }
    dyson_product(betas).mul(&wpart)
}

/// `expand_f_capped` without a total cap.
pub fn expand_f(betas: &[u32], t: usize, wcaps: &[u32]) -> LaurentPoly {
    expand_f_capped(betas, t, wcaps, None)
}

/// Coefficient of `z^k / w^m` in `F_{betas,q}[s;t]` (`t = m.len()`), computed
/// from the exact `w_j^{-m_j}` parts of the expanded inverse factors and a
/// targeted extraction against the Dyson product.
pub fn coeff_f(betas: &[u32], k: &[i32], m: &[u32]) -> RatFuncQ {
    let s = betas.len();
    assert_eq!(k.len(), s, "one z exponent per beta");
    if k.iter().sum::<i32>() != m.iter().map(|&x| x as i32).sum::<i32>() {
        return RatFuncQ::zero();
    }
    let mut h = LaurentPoly::one();
    for (j, &mj) in m.iter().enumerate() {
        let w = Var::w(j + 1);
        let mut part = LaurentPoly::one();
        for i in 1..=s {
            let x = Monomial::ratio(Var::z(i), w);
            let mut f = LaurentPoly::zero();
            for (a, c) in inv_poch_series(betas[i - 1], mj).into_iter().enumerate() {
                f.add_term(x.pow(a as i32), c);
            }
            part = part.mul_filtered(&f, |mm| -mm.exp(w) <= mj as i32);
        }
        let mut only = LaurentPoly::zero();
        for (mm, c) in part.terms() {
            if -mm.exp(w) == mj as i32 {
                only.add_term(mm.mul(&Monomial::var(w, mj as i32)), c.clone());
            }
        }
        h = h.mul(&only);
    }
    let target = Monomial::from_pairs(k.iter().enumerate().map(|(i, &e)| (Var::z(i + 1), e)));
    coeff_of_product(&dyson_product(betas), &h, &target)
}

fn sum_betas(betas: &[u32], range: std::ops::Range<usize>) -> i64 {
    betas[range].iter().map(|&b| b as i64).sum()
}

/// The factor `B_{a,b}` of the splitting formula (`a` is 1-based, `0 <= b < beta_a`).
pub fn b_factor(betas: &[u32], a: usize, b: u32) -> LaurentPoly {
    let s = betas.len();
    let ba = betas[a - 1];
    assert!(b < ba, "b must be below beta_a");
    let bi = b as i64;
    let qexp = bi * sum_betas(betas, 0..a - 1) + (bi + 1) * sum_betas(betas, a..s);
    let scalar = &RatFuncQ::q_pow(qexp) / &(&qpoch_rf(-bi, bi) * &qfact(ba - b - 1));
    let mut acc = LaurentPoly::constant(scalar);
    for i in 1..a {
        let x = Monomial::ratio(Var::z(a), Var::z(i));
        acc = acc
            .mul(&LaurentPoly::poch(&x, 1 - betas[i - 1] as i64, b))
            .mul(&LaurentPoly::poch(&x, bi + 1, ba - b));
    }
    for j in a + 1..=s {
        let x = Monomial::ratio(Var::z(a), Var::z(j));
        acc = acc
            .mul(&LaurentPoly::poch(&x, -(betas[j - 1] as i64), b + 1))
            .mul(&LaurentPoly::poch(&x, bi + 1, ba - b - 1));
    }
    acc
}

/// One summand `G_{a,b}` of the splitting of `F[s;1]`.
#[derive(Clone, Debug)]
pub struct SplitTerm {
    pub a: usize,
    pub b: u32,
    /// `B_{a,b}` times the Dyson product over pairs avoiding `a`.
    pub polynomial_part: LaurentPoly,
}

impl SplitTerm {
    /// `G_{a,b}` with `(1 - q^b z_a/w_1)^{-1}` expanded to `w_1`-degree `cap`.
    pub fn expanded(&self, cap: u32) -> LaurentPoly {
        let x = Monomial::ratio(Var::z(self.a), Var::w(1));
        let mut geo = LaurentPoly::zero();
        for n in 0..=cap as i32 {
            geo.add_term(x.pow(n), RatFuncQ::q_pow(self.b as i64 * n as i64));
        }
        self.polynomial_part.mul(&geo)
    }

    /// `H_{a,b} = G_{a,b} * prod_i (z_i/w_1;q)_{beta_i}`, a Laurent polynomial.
    pub fn cleared(&self, betas: &[u32]) -> LaurentPoly {
        let mut acc = self.polynomial_part.clone();
        let xa = Monomial::ratio(Var::z(self.a), Var::w(1));
        for k in 0..betas[self.a - 1] {
            if k == self.b {
                continue;
            }
            acc = acc.mul(&LaurentPoly::poch(&xa, k as i64, 1));
        }
        for i in 1..=betas.len() {
            if i != self.a {
                acc = acc.mul(&LaurentPoly::poch(&Monomial::ratio(Var::z(i), Var::w(1)), 0, betas[i - 1]));
            }
        }
        acc
    }
}

/// All `G_{a,b}` for `1 <= a <= s`, `0 <= b < beta_a`.
pub fn split_terms(betas: &[u32]) -> Vec<SplitTerm> {
    let mut out = Vec::new();
    for a in 1..=betas.len() {
        let rest = dyson_product_except(betas, Some(a));
        for b in 0..betas[a - 1] {
            out.push(SplitTerm { a, b, polynomial_part: b_factor(betas, a, b).mul(&rest) });
        }
    }
    out
}
