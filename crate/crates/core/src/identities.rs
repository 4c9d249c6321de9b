//! Formal q-series identities used by the constant-term arguments, checked
//! exactly as Laurent polynomial identities.

use crate::exactq::{inv_poch_coeff, inv_poch_coeff_complete, inv_poch_coeff_partial_fractions, qfact, qpoch_rf, RatFuncQ};
use crate::laurent::{dyson_product, expand_f, inv_poch_series, split_terms, LaurentPoly, Monomial, Var};

fn poch(x: &Monomial, e: i64, n: u32) -> LaurentPoly {
    LaurentPoly::poch(x, e, n)
}

fn z() -> Monomial {
    Monomial::var(Var::z(1), 1)
}

/// The coefficient of `z^m` in `(z;q)_beta^{-1}` four ways: the closed form,
/// the complete homogeneous polynomial, the partial-fraction sum and the
/// truncated geometric product.
pub fn inv_poch_agree(m: u32, beta: u32) -> bool {
    let closed = inv_poch_coeff(m, beta);
    let series = inv_poch_series(beta, m).pop().expect("nonempty series");
    let pf_ok = match inv_poch_coeff_partial_fractions(m, beta) {
        Some(v) => v == closed,
        None => beta == 0 && m == 0,
    };
    pf_ok && closed == inv_poch_coeff_complete(m, beta) && closed == series
}

/// `sum_{i<=m} (z;q)_i/(q;q)_i z^{m-i} = (qz;q)_m/(q;q)_m`
pub fn an_identity(m: u32) -> bool {
    let mut lhs = LaurentPoly::zero();
    for i in 0..=m {
        let t = poch(&z(), 0, i).scale(&qfact(i).recip()).mul_monomial(&z().pow((m - i) as i32));
        lhs = lhs.add(&t);
    }
    lhs == poch(&z(), 1, m).scale(&qfact(m).recip())
}

/// Partial fractions of `(z;q)_beta^{-1}`, after multiplying through by
/// `(z;q)_beta`: `1 = sum_b prod_{k != b} (1 - q^k z) / ((q^{-b};q)_b (q;q)_{beta-b-1})`.
pub fn zw_identity(beta: u32) -> bool {
    let mut rhs = LaurentPoly::zero();
    for b in 0..beta {
        let mut t = LaurentPoly::one();
        for k in 0..beta {
            if k != b {
                t = t.mul(&poch(&z(), k as i64, 1));
            }
        }
        let c = &qpoch_rf(-(b as i64), b as i64) * &qpoch_rf(1, (beta - b - 1) as i64);
        rhs = rhs.add(&t.scale(&c.recip()));
    }
    rhs == LaurentPoly::one()
}

/// `(q^k x;q)_b (q^l/x;q)_b = q^{b(l+k+b-1)} (q^{1-b-l} x;q)_b (q^{1-b-k}/x;q)_b`
/// with `x = z_1/z_2`.
pub fn interchange(b: u32, k: i64, l: i64) -> bool {
    let x = Monomial::ratio(Var::z(1), Var::z(2));
    let lhs = poch(&x, k, b).mul(&poch(&x.inv(), l, b));
    let bb = b as i64;
    let rhs = poch(&x, 1 - bb - l, b)
        .mul(&poch(&x.inv(), 1 - bb - k, b))
        .scale(&RatFuncQ::q_pow(bb * (l + k + bb - 1)));
    lhs == rhs
}

/// `(q z_a/z_i;q)_{beta_a} (z_i/z_a;q)_{beta_i}
///  = q^{b beta_i} (q^{1-beta_i} z_a/z_i;q)_b (q^{b+1} z_a/z_i;q)_{beta_a-b} (q^{-b} z_i/z_a;q)_{beta_i}`
pub fn cancel_before(beta_a: u32, beta_i: u32, b: u32) -> bool {
    let x = Monomial::ratio(Var::z(1), Var::z(2));
    let (bi, bb) = (beta_i as i64, b as i64);
    let lhs = poch(&x, 1, beta_a).mul(&poch(&x.inv(), 0, beta_i));
    let rhs = poch(&x, 1 - bi, b)
        .mul(&poch(&x, bb + 1, beta_a - b))
        .mul(&poch(&x.inv(), -bb, beta_i))
        .scale(&RatFuncQ::q_pow(bb * bi));
    lhs == rhs
}

/// `(z_a/z_j;q)_{beta_a} (q z_j/z_a;q)_{beta_j}
///  = q^{(b+1) beta_j} (q^{-beta_j} z_a/z_j;q)_{b+1} (q^{b+1} z_a/z_j;q)_{beta_a-b-1} (q^{-b} z_j/z_a;q)_{beta_j}`
pub fn cancel_after(beta_a: u32, beta_j: u32, b: u32) -> bool {
    let x = Monomial::ratio(Var::z(1), Var::z(2));
    let (bj, bb) = (beta_j as i64, b as i64);
    let lhs = poch(&x, 0, beta_a).mul(&poch(&x.inv(), 1, beta_j));
    let rhs = poch(&x, -bj, b + 1)
        .mul(&poch(&x, bb + 1, beta_a - b - 1))
        .mul(&poch(&x.inv(), -bb, beta_j))
        .scale(&RatFuncQ::q_pow((bb + 1) * bj));
    lhs == rhs
}

/// The splitting of `F[s;1]` with the `w_1` denominators cleared:
/// `sum_{a,b} H_{a,b} = prod_{i<j} (z_i/z_j;q)_{beta_i} (q z_j/z_i;q)_{beta_j}`.
pub fn splitting_cleared(betas: &[u32]) -> bool {
    let sum = split_terms(betas).iter().fold(LaurentPoly::zero(), |acc, t| acc.add(&t.cleared(betas)));
    sum == dyson_product(betas)
}

/// The same splitting compared against the truncated expansion of `F[s;1]`.
pub fn splitting_truncated(betas: &[u32], cap: u32) -> bool {
    let sum = split_terms(betas).iter().fold(LaurentPoly::zero(), |acc, t| acc.add(&t.expanded(cap)));
    sum == expand_f(betas, 1, &[cap])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_coefficients() {
        for beta in 0..=4 {
            for m in 0..=6 {
                assert!(inv_poch_agree(m, beta), "m={m} beta={beta}");
            }
        }
    }

    #[test]
    fn auxiliary_identities() {
        for m in 0..=6 {
            assert!(an_identity(m));
        }
        for beta in 1..=5 {
            assert!(zw_identity(beta));
        }
        for b in 0..=3 {
            for k in -2..=2 {
                for l in -2..=2 {
                    assert!(interchange(b, k, l), "{b} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn cancellations() {
        for ba in 1..=3 {
            for bo in 1..=3 {
                for b in 0..ba {
                    assert!(cancel_before(ba, bo, b));
                    assert!(cancel_after(ba, bo, b));
                }
            }
        }
    }

    #[test]
    fn wrong_exponent_is_detected() {
        let x = Monomial::ratio(Var::z(1), Var::z(2));
        let lhs = poch(&x, 0, 2).mul(&poch(&x.inv(), 0, 2));
        let rhs = poch(&x, -1, 2).mul(&poch(&x.inv(), -1, 2));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn splitting() {
        for betas in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![1, 3], vec![1, 1, 1], vec![2, 1, 2]] {
            assert!(splitting_cleared(&betas), "{betas:?}");
        }
        assert!(splitting_truncated(&[1, 2], 3));
        assert!(splitting_truncated(&[2, 1, 1], 2));
    }
}
