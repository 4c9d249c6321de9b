//! Exact arithmetic over `Q` and the field `Q(q)`.
//!
//! - [`PolyQ`]: polynomials in `q` with rational coefficients
//! - [`RatFuncQ`]: canonical reduced rational functions in `q`
//! - [`qpoch`], [`qpoch_rf`], [`qpoch_step`]: q-Pochhammer symbols
//! - [`inv_poch_coeff`]: coefficients of `(z;q)_beta^{-1}` by three routes

mod pochhammer;
mod poly;
mod ratfunc;
mod zpoly;

pub use pochhammer::{
    inv_poch_coeff, inv_poch_coeff_complete, inv_poch_coeff_partial_fractions, qfact, qpoch,
    qpoch_rf, qpoch_step, rising,
};
pub use poly::PolyQ;
pub use ratfunc::RatFuncQ;

use crate::error::Result;

/// Canonical reduced form of `num / den`.
pub fn rf_reduce(num: &PolyQ, den: &PolyQ) -> Result<RatFuncQ> {
    RatFuncQ::new(num, den)
}

/// Limit of `f` as `q -> 1`.
pub fn limit_at_one(f: &RatFuncQ) -> Result<num_rational::BigRational> {
    f.limit_at_one()
}
