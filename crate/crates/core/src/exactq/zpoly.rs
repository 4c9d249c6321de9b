//! Dense univariate polynomials in `q` with integer coefficients.
//!
//! This is the kernel behind [`RatFuncQ`](super::RatFuncQ): numerators and
//! denominators are kept primitive-pair normalized with integer
//! coefficients, so the gcd machinery only ever sees `Z[q]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree; no trailing zeros. Zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct IntPoly {
    pub(crate) c: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl IntPoly {
    pub(crate) fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub(crate) fn one() -> Self {
        IntPoly { c: vec![BigInt::one()] }
    }

    pub(crate) fn constant(v: BigInt) -> Self {
        let mut p = IntPoly { c: vec![v] };
        p.trim();
        p
    }

    /// `coeff * q^k`
    pub(crate) fn monomial(coeff: BigInt, k: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = coeff;
        IntPoly { c }
    }

    pub(crate) fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = IntPoly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Lowest power of `q` with a nonzero coefficient.
    pub(crate) fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub(crate) fn neg(&self) -> Self {
        IntPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] += x;
        }
        Self::from_coeffs(c)
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(c)
    }

    pub(crate) fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Divides every coefficient by `k`; caller guarantees exactness.
    pub(crate) fn div_exact_scalar(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        IntPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Multiply by `q^k`.
    pub(crate) fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        IntPoly { c }
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub(crate) fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            if x.is_zero() {
                continue;
            }
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub(crate) fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        self.div_exact_scalar(&g)
    }

    /// Pseudo-remainder of `self` by `d` (nonzero).
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lcd = d.lc().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lcr = r.lc().unwrap().clone();
            let k = dr - dd;
            // r <- lcd*r - lcr*q^k*d
            let mut c: Vec<BigInt> = r.c.iter().map(|x| x * &lcd).collect();
            for (j, x) in d.c.iter().enumerate() {
                c[j + k] -= &lcr * x;
            }
            r = Self::from_coeffs(c);
            let g = r.content();
            if !g.is_zero() && !g.is_one() {
                r = r.div_exact_scalar(&g);
            }
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub(crate) fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || o.is_constant() {
            return Self::one();
        }
        // common power of q
        let v = self.valuation().unwrap().min(o.valuation().unwrap());
        let a0 = if v > 0 { IntPoly { c: self.c[v..].to_vec() } } else { self.clone() };
        let b0 = if v > 0 { IntPoly { c: o.c[v..].to_vec() } } else { o.clone() };
        let (mut a, mut b) = if a0.c.len() >= b0.c.len() {
            (a0.primitive(), b0.primitive())
        } else {
            (b0.primitive(), a0.primitive())
        };
        if a == b {
            return a.shift(v);
        }
        if let Some(h) = Self::heuristic_gcd(&a, &b) {
            return h.shift(v);
        }
        while !b.is_zero() {
            if b.is_constant() {
                a = Self::one();
                break;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.shift(v)
    }

    fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    /// Balanced base-`x` digits of `h`, read as polynomial coefficients.
    fn from_balanced_digits(mut h: BigInt, x: &BigInt) -> Self {
        let half = x >> 1;
        let mut c = Vec::new();
        while !h.is_zero() {
            let mut g = h.mod_floor(x);
            if g > half {
                g -= x;
            }
            h = (&h - &g) / x;
            c.push(g);
        }
        Self::from_coeffs(c)
    }

    /// Quotient when `d` divides `self` exactly over `Z`.
    fn try_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(dn) = self.degree() else { return Some(Self::zero()) };
        if dn < dd {
            return None;
        }
        let lcd = d.lc().unwrap();
        let mut r = self.c.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lcd);
            if !rem.is_zero() {
                return None;
            }
            for (j, x) in d.c.iter().enumerate() {
                r[j + k] -= &qk * x;
            }
            quo[k] = qk;
        }
        r.iter().all(|x| x.is_zero()).then(|| Self::from_coeffs(quo))
    }

    /// Gcd of primitive polynomials by evaluation at a large integer and
    /// reconstruction from the integer gcd; `None` if the attempts fail.
    fn heuristic_gcd(a: &Self, b: &Self) -> Option<Self> {
        let (na, nb) = (a.max_norm(), b.max_norm());
        let bound = na.clone().min(nb.clone()) * 2u32 + 29u32;
        let alt = (na / a.lc()?.abs()).min(nb / b.lc()?.abs()) * 2u32 + 2u32;
        let mut x = bound.clone().min(bound.sqrt() * 99u32).max(alt);
        for _ in 0..6 {
            let (fa, fb) = (a.eval(&x), b.eval(&x));
            if !fa.is_zero() && !fb.is_zero() {
                let h = Self::from_balanced_digits(fa.gcd(&fb), &x).primitive();
                if !h.is_zero() && a.try_div(&h).is_some() && b.try_div(&h).is_some() {
                    return Some(h);
                }
            }
            x = &x * 73794u32 * x.sqrt().sqrt() / 27011u32;
        }
        None
    }

    /// Exact quotient `self / d` when `d` is primitive and divides `self` in `Q[q]`.
    pub(crate) fn div_exact(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let dd = d.degree().expect("division by zero polynomial");
        let Some(dn) = self.degree() else { return Self::zero() };
        assert!(dn >= dd, "inexact polynomial division");
        let lcd = d.lc().unwrap();
        let mut r = self.c.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lcd);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, x) in d.c.iter().enumerate() {
                r[j + k] -= &qk * x;
            }
            quo[k] = qk;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        Self::from_coeffs(quo)
    }

    pub(crate) fn eval_at_one(&self) -> BigInt {
        self.c.iter().sum()
    }

    /// Synthetic division by `(q - 1)`; caller guarantees `eval_at_one() == 0`.
    pub(crate) fn div_by_q_minus_one(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.c.len();
        let mut quo = vec![BigInt::zero(); n - 1];
        let mut acc = BigInt::zero();
        for k in (1..n).rev() {
            acc += &self.c[k];
            quo[k - 1] = acc.clone();
        }
        Self::from_coeffs(quo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q^2)(1-q^3) and (1-q^2)(1+q^2)
        let a = p(&[1, 0, -1]).mul(&p(&[1, 0, 0, -1]));
        let b = p(&[1, 0, -1]).mul(&p(&[1, 0, 1]));
        let g = a.gcd(&b);
        assert_eq!(g, p(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_keeps_power_of_q() {
        let a = p(&[0, 0, 2, 2]);
        let b = p(&[0, 3, 3]);
        assert_eq!(a.gcd(&b), p(&[0, 1, 1]));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[3, -1, 4, 1, -5]);
        let b = p(&[-1, 0, 1]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn division_by_q_minus_one() {
        let a = p(&[1, 0, -1]); // 1 - q^2 = -(q-1)(q+1)
        assert_eq!(a.div_by_q_minus_one(), p(&[-1, -1]));
    }
}
