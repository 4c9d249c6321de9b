use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{write_terms, PolyQ};
use super::zpoly::IntPoly;
use crate::error::{Error, Result};

/// An element of `Q(q)` in canonical reduced form.
///
/// `num` and `den` have integer coefficients, share no polynomial factor and
/// no common integer content, and `den` has a positive leading coefficient.
/// Equal values therefore have identical representations, so the derived
/// `Eq`/`Hash` are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: IntPoly,
    den: IntPoly,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFuncQ { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        RatFuncQ { num: IntPoly::constant(BigInt::from(n)), den: IntPoly::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFuncQ { num: IntPoly::constant(n), den: IntPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_int_parts(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
    }

    pub fn from_poly(p: &PolyQ) -> Self {
        let (d, n) = p.to_int_poly();
        Self::from_int_parts(n, IntPoly::constant(d))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            RatFuncQ { num: IntPoly::monomial(BigInt::one(), e as usize), den: IntPoly::one() }
        } else {
            RatFuncQ { num: IntPoly::one(), den: IntPoly::monomial(BigInt::one(), (-e) as usize) }
        }
    }

    /// `1 - q^e` for any integer `e`.
    pub fn one_minus_q_pow(e: i64) -> Self {
        if e == 0 {
            return Self::zero();
        }
        if e > 0 {
            let mut c = vec![BigInt::zero(); e as usize + 1];
            c[0] = BigInt::one();
            c[e as usize] = -BigInt::one();
            RatFuncQ { num: IntPoly::from_coeffs(c), den: IntPoly::one() }
        } else {
            // 1 - q^{-k} = (q^k - 1)/q^k
            let k = (-e) as usize;
            let mut c = vec![BigInt::zero(); k + 1];
            c[0] = -BigInt::one();
            c[k] = BigInt::one();
            RatFuncQ { num: IntPoly::from_coeffs(c), den: IntPoly::monomial(BigInt::one(), k) }
        }
    }

    /// Canonical reduced form of `num / den`.
    pub fn new(num: &PolyQ, den: &PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (dn, n) = num.to_int_poly();
        let (dd, d) = den.to_int_poly();
        // num/den = (n/dn) / (d/dd) = (n*dd) / (d*dn)
        Ok(Self::from_int_parts(n.scale(&dd), d.scale(&dn)))
    }

    pub(crate) fn from_int_parts(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Self::fix_content(num, den)
    }

    /// Assumes `num` and `den` are coprime in `Q[q]`.
    fn fix_content(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_one() {
            let c = num.content().gcd(&den.content());
            if !c.is_one() {
                num = num.div_exact_scalar(&c);
                den = den.div_exact_scalar(&c);
            }
            if den.lc().is_some_and(|x| x.is_negative()) {
                num = num.neg();
                den = den.neg();
            }
        }
        RatFuncQ { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn numer(&self) -> PolyQ {
        PolyQ::from_int_poly(&self.num)
    }

    pub fn denom(&self) -> PolyQ {
        PolyQ::from_int_poly(&self.den)
    }

    /// The value as a constant rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.num.is_constant() || !self.den.is_constant() {
            return None;
        }
        let n = self.num.c.first().cloned().unwrap_or_else(BigInt::zero);
        Some(BigRational::new(n, self.den.c[0].clone()))
    }

    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::fix_content(self.den.clone(), self.num.clone()))
    }

    /// Panics on zero, like integer division.
    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of zero in Q(q)")
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.checked_recip()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Limit as `q -> 1`, cancelling common factors of `(q - 1)` first.
    pub fn limit_at_one(&self) -> Result<BigRational> {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        loop {
            let dv = d.eval_at_one();
            let nv = n.eval_at_one();
            if !dv.is_zero() {
                return Ok(BigRational::new(nv, dv));
            }
            if !nv.is_zero() {
                return Err(Error::PoleAtOne);
            }
            n = n.div_by_q_minus_one();
            d = d.div_by_q_minus_one();
        }
    }

    /// Canonical serialization `(c*q^k + ...)/(c*q^k + ...)`, ascending degree.
    pub fn to_canonical_string(&self) -> String {
        format!("({})/({})", canon_poly(&self.num), canon_poly(&self.den))
    }
}

fn canon_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.c.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("{c}*q^{k}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn parse_poly(s: &str) -> Result<PolyQ> {
    let s = s.trim();
    if s == "0" {
        return Ok(PolyQ::zero());
    }
    let mut acc = PolyQ::zero();
    for term in s.split('+') {
        let term = term.trim();
        let (c, k) = match term.split_once('*') {
            Some((c, e)) => {
                let e = e.trim();
                let k = e
                    .strip_prefix("q^")
                    .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad exponent in `{term}`: {e}")))?;
                (c.trim(), k)
            }
            None => (term, 0),
        };
        let c = BigRational::from_str(c).map_err(|e| Error::Parse(format!("bad coefficient `{c}`: {e}")))?;
        acc = &acc + &PolyQ::monomial(c, k);
    }
    Ok(acc)
}

impl FromStr for RatFuncQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `(num)/(den)`, got `{s}`")))?;
        let (n, d) = inner
            .split_once(")/(")
            .ok_or_else(|| Error::Parse(format!("expected `(num)/(den)`, got `{s}`")))?;
        RatFuncQ::new(&parse_poly(n)?, &parse_poly(d)?)
    }
}

impl Serialize for RatFuncQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for RatFuncQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({self})")
    }
}

fn int_terms(p: &IntPoly) -> impl Iterator<Item = (usize, BigRational)> + '_ {
    p.c.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, BigRational::from_integer(c.clone())))
}

struct Terms<'a>(&'a IntPoly);

impl fmt::Display for Terms<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, int_terms(self.0))
    }
}

/// Human-readable form, e.g. `1 + q` or `(1 - q^3)/(1 - q)`. Signs are
/// flipped so that the lowest-degree coefficient of the denominator is
/// positive.
impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", Terms(&self.num));
        }
        let flip = self.den.c.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let (num, den) = if flip { (self.num.neg(), self.den.neg()) } else { (self.num.clone(), self.den.clone()) };
        let nterms = num.c.iter().filter(|c| !c.is_zero()).count();
        let dterms = den.c.iter().filter(|c| !c.is_zero()).count();
        if nterms > 1 {
            write!(f, "({})", Terms(&num))?;
        } else {
            write!(f, "{}", Terms(&num))?;
        }
        if dterms > 1 || den.c.len() > 1 && den.lc().is_some_and(|x| !x.is_one()) {
            write!(f, "/({})", Terms(&den))
        } else {
            write!(f, "/{}", Terms(&den))
        }
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFuncQ { num: n, den: IntPoly::one() };
            }
            return RatFuncQ::from_int_parts(n, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g), o.den.div_exact(&g))
        };
        let n = self.num.mul(&d1).add(&o.num.mul(&b1));
        let d = self.den.mul(&d1);
        RatFuncQ::from_int_parts(n, d)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, o: &RatFuncQ) -> RatFuncQ {
        self + &(-o)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || o.is_zero() {
            return RatFuncQ::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncQ { num: self.num.mul(&o.num), den: IntPoly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1), o.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RatFuncQ::fix_content(a.mul(&c), b.mul(&d))
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    fn div(self, o: &RatFuncQ) -> RatFuncQ {
        self * &o.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, o: RatFuncQ) -> RatFuncQ {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFuncQ> for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, o: &RatFuncQ) -> RatFuncQ {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl AddAssign<&RatFuncQ> for RatFuncQ {
    fn add_assign(&mut self, o: &RatFuncQ) {
        *self = &*self + o;
    }
}

impl SubAssign<&RatFuncQ> for RatFuncQ {
    fn sub_assign(&mut self, o: &RatFuncQ) {
        *self = &*self - o;
    }
}

impl MulAssign<&RatFuncQ> for RatFuncQ {
    fn mul_assign(&mut self, o: &RatFuncQ) {
        *self = &*self * o;
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
}

impl One for RatFuncQ {
    fn one() -> Self {
        RatFuncQ::one()
    }
}

impl From<i64> for RatFuncQ {
    fn from(n: i64) -> Self {
        RatFuncQ::from_integer(n)
    }
}

impl std::iter::Sum for RatFuncQ {
    fn sum<I: Iterator<Item = RatFuncQ>>(iter: I) -> Self {
        iter.fold(RatFuncQ::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatFuncQ {
    fn product<I: Iterator<Item = RatFuncQ>>(iter: I) -> Self {
        iter.fold(RatFuncQ::one(), |a, b| &a * &b)
    }
}
