//! Partition combinatorics: dominance, multiplicities, complements and the
//! rectangular filtration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the zero partition `(0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// Result of comparing two partitions of the same weight in dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// The rectangle `(k^s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub k: u32,
    pub s: u32,
}

impl Rect {
    pub fn partition(&self) -> Partition {
        Partition(vec![self.k; self.s as usize])
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}^{})", self.k, self.s)
    }
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero entries.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn zero() -> Self {
        Partition(Vec::new())
    }

    pub fn rect(k: u32, s: u32) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Partition(vec![k; s as usize])
    }

    /// `((k+1)^t, k^s)`
    pub fn almost_rect(k: u32, s: u32, t: u32) -> Self {
        let mut v = vec![k + 1; t as usize];
        v.extend(std::iter::repeat_n(k, s as usize));
        Partition::from_unsorted(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda|`
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `l(lambda)`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_i` with 1-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let Some(&l1) = self.0.first() else { return Self::zero() };
        Partition((1..=l1).map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32).collect())
    }

    /// `m_i(lambda)`
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&x| x == i).count() as u32
    }

    /// Map from part size to multiplicity (only nonzero multiplicities).
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &x in &self.0 {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`
    pub fn z_lambda(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, m) in self.multiplicities() {
            for j in 1..=m {
                z *= BigInt::from(i) * BigInt::from(j);
            }
        }
        z
    }

    pub fn is_rectangular(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&x| x == self.0[0])
    }

    /// `(k, s, t)` with `self = ((k+1)^t, k^s)`, `k, s > 0`, `t >= 0`.
    pub fn as_almost_rect(&self) -> Option<(u32, u32, u32)> {
        let m = self.multiplicities();
        match m.len() {
            1 => {
                let (&k, &s) = m.iter().next().unwrap();
                Some((k, s, 0))
            }
            2 => {
                let mut it = m.iter();
                let (&k, &s) = it.next().unwrap();
                let (&k1, &t) = it.next().unwrap();
                (k1 == k + 1).then_some((k, s, t))
            }
            _ => None,
        }
    }

    /// `mu ⊂' self`: every multiplicity of `mu` is at most that in `self`.
    pub fn contains_multiset(&self, mu: &Partition) -> bool {
        let mine = self.multiplicities();
        mu.multiplicities().iter().all(|(i, m)| mine.get(i).is_some_and(|x| x >= m))
    }

    /// Multiset difference `self \ mu`; `None` unless `mu ⊂' self`.
    pub fn multiset_difference(&self, mu: &Partition) -> Option<Partition> {
        let mut m = self.multiplicities();
        for (i, k) in mu.multiplicities() {
            let e = m.get_mut(&i)?;
            *e = e.checked_sub(k)?;
        }
        let mut v = Vec::with_capacity(self.len() - mu.len());
        for (i, k) in m.iter().rev() {
            v.extend(std::iter::repeat_n(*i, *k as usize));
        }
        Some(Partition(v))
    }

    /// Multiset union `self ∪ mu`.
    pub fn union(&self, mu: &Partition) -> Partition {
        let mut v = Vec::with_capacity(self.len() + mu.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < mu.0.len() {
            if j == mu.0.len() || (i < self.0.len() && self.0[i] >= mu.0[j]) {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(mu.0[j]);
                j += 1;
            }
        }
        Partition(v)
    }

    /// `prod_i C(m_i(self), m_i(mu))`, zero unless `mu ⊂' self`.
    pub fn multiplicity_binomial(&self, mu: &Partition) -> BigInt {
        let mine = self.multiplicities();
        let mut acc = BigInt::one();
        for (i, k) in mu.multiplicities() {
            let n = mine.get(&i).copied().unwrap_or(0);
            if k > n {
                return BigInt::from(0);
            }
            acc *= binomial(n, k);
        }
        acc
    }

    /// All sub-multisets `mu ⊂' self` (including `(0)` and `self`).
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let m: Vec<(u32, u32)> = self.multiplicities().into_iter().rev().collect();
        let mut out = vec![Vec::new()];
        for (part, mult) in m {
            let mut next = Vec::with_capacity(out.len() * (mult as usize + 1));
            for base in &out {
                for c in 0..=mult {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(part, c as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition).collect()
    }

    /// Frequency notation, e.g. `(6^2 3^1 2^2)`; `(0)` for the zero partition.
    pub fn to_freq_string(&self) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let body: Vec<String> = self.multiplicities().iter().rev().map(|(i, m)| format!("{i}^{m}")).collect();
        format!("({})", body.join(" "))
    }

    /// Lower-right corner number: number of distinct parts.
    pub fn corner_number(&self) -> u32 {
        self.multiplicities().len() as u32
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Accepts `6,6,3,2,2`, frequency notation `(4^3)` / `(4^2 3^1)` / `4^2,3`,
/// and `0`, `(0)` or the empty string for the zero partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::zero());
        }
        let mut parts = Vec::new();
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad partition `{s}`: {e}"));
            match tok.split_once('^') {
                Some((a, m)) => {
                    let a: u32 = a.trim().parse().map_err(bad)?;
                    let m: u32 = m.trim().parse().map_err(bad)?;
                    parts.extend(std::iter::repeat_n(a, m as usize));
                }
                None => parts.push(tok.parse().map_err(bad)?),
            }
        }
        parts.retain(|&x| x > 0);
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Dominance comparison of two partitions of equal weight.
pub fn dominance_cmp(lam: &Partition, mu: &Partition) -> Result<Dominance> {
    if lam.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lam.weight(), mu.weight()));
    }
    let n = lam.len().max(mu.len());
    let (mut ge, mut le) = (true, true);
    let (mut a, mut b) = (0i64, 0i64);
    for i in 1..=n {
        a += lam.part(i) as i64;
        b += mu.part(i) as i64;
        ge &= a >= b;
        le &= a <= b;
    }
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        (false, false) => Dominance::Incomparable,
    })
}

/// `a >= b` in the generalized dominance order on integer vectors: every
/// leading partial sum of `a` is at least that of `b`, padding with zeros.
pub fn gen_dominance_geq(a: &[i64], b: &[i64]) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0i64, 0i64);
    for i in 0..n {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// `a^+`: entries rearranged in weakly decreasing order.
pub fn sorted_desc(a: &[i64]) -> Vec<i64> {
    let mut v = a.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// `R -' lam` for `R = (k^s)`: `(R -' lam)_i = k - lam_{s+1-i}`, zeros dropped.
pub fn complement(k: u32, s: u32, lam: &Partition) -> Result<Partition> {
    if lam.part(1) > k || lam.len() > s as usize {
        return Err(Error::DoesNotFit { part: lam.clone(), k, s });
    }
    let s = s as usize;
    Ok(Partition::from_unsorted((1..=s).map(|i| k - lam.part(s + 1 - i)).collect()))
}

/// Complement of `lam` in its bounding rectangle `(lam_1^{l(lam)})`.
pub fn exact_complement(lam: &Partition) -> Partition {
    if lam.is_zero() {
        return Partition::zero();
    }
    complement(lam.part(1), lam.len() as u32, lam).expect("a partition fits its bounding rectangle")
}

/// Rectangular filtration by iterated exact complements.
pub fn rect_filtration(lam: &Partition) -> Result<Vec<Rect>> {
    if lam.is_zero() {
        return Err(Error::ZeroPartition);
    }
    let mut out = Vec::new();
    let mut cur = lam.clone();
    while !cur.is_zero() {
        out.push(Rect { k: cur.part(1), s: cur.len() as u32 });
        if cur.is_rectangular() {
            break;
        }
        cur = exact_complement(&cur);
    }
    Ok(out)
}

/// Rectangular filtration from the direct description in terms of the
/// distinct parts `a_1 > ... > a_r` with multiplicities `n_1, ..., n_r`:
/// odd rectangles `R_{2i+1} = ((a_{i+1} - a_{r+1-i})^{n_{i+1} + ... + n_{r-i}})`
/// and even rectangles `R_{2i} = ((a_i - a_{r+1-i})^{n_{i+1} + ... + n_{r+1-i}})`,
/// with `a_{r+1} = 0`.
pub fn rect_filtration_closed_form(lam: &Partition) -> Result<Vec<Rect>> {
    if lam.is_zero() {
        return Err(Error::ZeroPartition);
    }
    let m: Vec<(u32, u32)> = lam.multiplicities().into_iter().rev().collect();
    let r = m.len();
    let a = |j: usize| if j == r + 1 { 0 } else { m[j - 1].0 };
    let n = |j: usize| m[j - 1].1;
    let mut out = Vec::with_capacity(r);
    for idx in 1..=r {
        let i = idx / 2;
        let (k, s) = if idx % 2 == 1 {
            // i < j < r - i + 1
            (a(i + 1) - a(r + 1 - i), (i + 1..=r - i).map(n).sum())
        } else {
            // i < j <= r - i + 1
            (a(i) - a(r + 1 - i), (i + 1..=r + 1 - i).map(n).sum())
        };
        out.push(Rect { k, s });
    }
    Ok(out)
}

/// All partitions of `n`, optionally capping the length and the largest part.
/// Generated in reverse lexicographic order, starting from `(n)`.
pub fn partitions_bounded(n: u32, max_len: Option<usize>, max_part: Option<u32>) -> Vec<Partition> {
    fn rec(
        rem: u32,
        cap: u32,
        max_len: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part.unwrap_or(n), max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

pub fn partitions(n: u32) -> Vec<Partition> {
    partitions_bounded(n, None, None)
}
