//! Field abstraction shared by the `Q(q)` and `Q` code paths, and Gaussian
//! elimination over it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::RatFuncQ;

/// Exact field operations by reference.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Serialized form used in JSON output.
    fn to_json_string(&self) -> String {
        self.to_string()
    }
}

impl Field for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn one() -> Self {
        RatFuncQ::one()
    }
    fn from_bigint(n: &BigInt) -> Self {
        RatFuncQ::from_bigint(n.clone())
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        RatFuncQ::is_one(self)
    }
    fn to_json_string(&self) -> String {
        self.to_canonical_string()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Solves `a x = b` for square `a` by Gaussian elimination with row pivoting.
pub fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "solve: shape mismatch");
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = F::one().div(&a[col][col]);
        for j in col..n {
            a[col][j] = a[col][j].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        let (top, rest) = a.split_at_mut(col + 1);
        let prow = &top[col];
        for (off, row) in rest.iter_mut().enumerate() {
            let r = col + 1 + off;
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&prow[j]));
                }
            }
            b[r] = b[r].sub(&f.mul(&b[col]));
        }
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc = acc.sub(&a[i][j].mul(&x[j]));
            }
        }
        x[i] = acc;
    }
    Ok(x)
}

/// All permutations of `0..n` (as images of `0..n`) with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, i8)>) {
        if prefix.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, n, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn solves_small_rational_system() {
        let a = vec![vec![r(0), r(2)], vec![r(3), r(1)]];
        let x = solve(a, vec![r(4), r(5)]).unwrap();
        assert_eq!(x, vec![r(1), r(2)]);
    }

    #[test]
    fn permutation_signs() {
        let ps = permutations_with_sign(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|p| p.1 as i32).sum::<i32>(), 0);
        assert_eq!(ps[0], (vec![0, 1, 2], 1));
        assert_eq!(permutations_with_sign(0), vec![(vec![], 1)]);
    }

    #[test]
    fn singular_system_is_error() {
        let a = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(matches!(solve(a, vec![r(1), r(1)]), Err(Error::SingularSystem)));
    }

    #[test]
    fn solves_over_function_field() {
        // (1 - q) x = 1 - q^2
        let a = vec![vec![RatFuncQ::one_minus_q_pow(1)]];
        let x = solve(a, vec![RatFuncQ::one_minus_q_pow(2)]).unwrap();
        assert_eq!(x[0], &RatFuncQ::one() + &RatFuncQ::q_pow(1));
    }
}
