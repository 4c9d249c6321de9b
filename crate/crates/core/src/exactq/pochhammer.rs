//! q-Pochhammer symbols and the coefficients of `(z;q)_beta^{-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::PolyQ;
use super::RatFuncQ;

/// `(q^e; q)_n = prod_{k<n} (1 - q^{e+k})` for `e >= 0`, as a polynomial.
pub fn qpoch(e: u32, n: u32) -> PolyQ {
    let mut acc = PolyQ::one();
    for k in 0..n {
        let f = &PolyQ::one() - &PolyQ::q_pow((e + k) as usize);
        acc = &acc * &f;
    }
    acc
}

/// `(q^a; q^step)_n` for any integers `a`, `step` and `n`.
///
/// For `n < 0` this is `1 / prod_{k=1}^{-n} (1 - q^{a - k*step})`, the usual
/// extension satisfying `(x;p)_{n} (x p^n; p)_{m} = (x;p)_{n+m}`.
/// Panics when a negative-length symbol hits a zero factor.
pub fn qpoch_step(a: i64, step: i64, n: i64) -> RatFuncQ {
    if n >= 0 {
        (0..n).map(|k| RatFuncQ::one_minus_q_pow(a + k * step)).product()
    } else {
        let d: RatFuncQ = (1..=-n).map(|k| RatFuncQ::one_minus_q_pow(a - k * step)).product();
        d.recip()
    }
}

/// `(q^e; q)_n` for any integer `e`, as an element of `Q(q)`.
pub fn qpoch_rf(e: i64, n: i64) -> RatFuncQ {
    qpoch_step(e, 1, n)
}

/// `(q;q)_n`
pub fn qfact(n: u32) -> RatFuncQ {
    qpoch_rf(1, n as i64)
}

/// Coefficient of `z^m` in `(z;q)_beta^{-1}`, via the closed form
/// `(q^beta;q)_m / (q;q)_m`.
pub fn inv_poch_coeff(m: u32, beta: u32) -> RatFuncQ {
    let v = &qpoch_rf(beta as i64, m as i64) / &qfact(m);
    debug_assert_eq!(v, inv_poch_coeff_complete(m, beta));
    v
}

/// Same coefficient as the complete homogeneous polynomial
/// `S_m(1, q, ..., q^{beta-1})`, computed by a direct convolution of geometric
/// series.
pub fn inv_poch_coeff_complete(m: u32, beta: u32) -> RatFuncQ {
    // h[j] = S_j over the first b variables; add variables one at a time.
    let m = m as usize;
    let mut h = vec![PolyQ::zero(); m + 1];
    h[0] = PolyQ::one();
    for b in 0..beta as usize {
        // multiply the series by 1/(1 - q^b z)
        for j in 1..=m {
            let prev = &h[j - 1] * &PolyQ::q_pow(b);
            h[j] = &h[j] + &prev;
        }
    }
    RatFuncQ::from_poly(&h[m])
}

/// The partial-fraction expression
/// `sum_{b<beta} q^{bm} / ((q^{-b};q)_b (q;q)_{beta-1-b})`.
/// Undefined for `(beta, m) = (0, 0)`, where `None` is returned.
pub fn inv_poch_coeff_partial_fractions(m: u32, beta: u32) -> Option<RatFuncQ> {
    if beta == 0 && m == 0 {
        return None;
    }
    Some(
        (0..beta as i64)
            .map(|b| {
                let d = &qpoch_rf(-b, b) * &qpoch_rf(1, beta as i64 - 1 - b);
                &RatFuncQ::q_pow(b * m as i64) / &d
            })
            .sum(),
    )
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)` over `Q`.
pub fn rising(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        acc *= x + BigRational::from_integer(BigInt::from(k));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(1, 0), PolyQ::one());
        assert_eq!(qpoch(1, 2), PolyQ::from_ints(&[1, -1, -1, 1]));
        let want = &PolyQ::from_ints(&[1, 0, -1]) * &PolyQ::from_ints(&[1, 0, 0, -1]);
        assert_eq!(qpoch(2, 2), want);
    }

    #[test]
    fn negative_base_exponent() {
        // (q^{-1};q)_1 = 1 - 1/q
        assert_eq!(qpoch_rf(-1, 1), RatFuncQ::one_minus_q_pow(-1));
        // (q^{-2};q)_2 = (1 - q^{-2})(1 - q^{-1})
        let want = &RatFuncQ::one_minus_q_pow(-2) * &RatFuncQ::one_minus_q_pow(-1);
        assert_eq!(qpoch_rf(-2, 2), want);
    }

    #[test]
    fn negative_length_convention() {
        // (x;p)_{-1} (x p^{-1}; p)_1 = (x;p)_0 = 1
        let a = qpoch_step(5, 2, -1);
        let b = qpoch_step(3, 2, 1);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn inverse_coefficient_examples() {
        for beta in 0..4 {
            assert!(inv_poch_coeff(0, beta).is_one());
        }
        assert_eq!(inv_poch_coeff(1, 2), RatFuncQ::from_poly(&PolyQ::from_ints(&[1, 1])));
        for m in 0..6 {
            assert!(inv_poch_coeff(m, 1).is_one());
        }
    }

    #[test]
    fn partial_fraction_proviso() {
        assert!(inv_poch_coeff_partial_fractions(0, 0).is_none());
        assert!(inv_poch_coeff_partial_fractions(3, 0).unwrap().is_zero());
    }
}
