//! Hall algebra structure constants.
//!
//! The closed Pieri formula handles column multiplications directly; general
//! constants go through the symmetric-function isomorphism: expand
//! `P_mu P_nu` in the `{P_lambda}` basis by pairing against the dual
//! `{Q_lambda}` basis, then rescale by `q^{n(lambda) - n(mu) - n(nu)}`.
//! Module counting is left entirely to the brute-force oracle.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed};

use crate::coeff::{Field, Rationals};
use crate::combinatorics::{b_t, gauss_binomial, Partition};
use crate::error::{Error, Result};
use crate::symfunc::{hl_q, inner_single, Metric, PowerSumPoly};

/// Whether `lambda/mu` is a vertical strip of size `r`: containment,
/// `|lambda| - |mu| = r`, and at most one box removed per row.
pub fn is_vertical_strip(lambda: &Partition, mu: &Partition, r: u32) -> bool {
    if !lambda.contains(mu) || lambda.weight() != mu.weight() + r as u64 {
        return false;
    }
    lambda
        .parts()
        .iter()
        .enumerate()
        .all(|(i, &l)| l - mu.parts().get(i).copied().unwrap_or(0) <= 1)
}

/// The vertical-strip coefficient
/// `prod_i gauss(nu'_i - nu'_{i+1}, nu'_i - mu'_i)_t`, zero unless `nu/mu`
/// is a vertical r-strip.
pub fn strip_coeff<F: Field>(
    field: &F,
    nu: &Partition,
    mu: &Partition,
    r: u32,
    t: &F::Elem,
) -> F::Elem {
    if !is_vertical_strip(nu, mu, r) {
        return field.zero();
    }
    let nc = nu.conjugate();
    let mc = mu.conjugate();
    let mut acc = field.one();
    for i in 0..nc.parts().len() {
        let ni = nc.parts()[i];
        let ni1 = nc.parts().get(i + 1).copied().unwrap_or(0);
        let mi = mc.parts().get(i).copied().unwrap_or(0);
        acc = field.mul(&acc, &gauss_binomial(field, ni - ni1, ni - mi, t));
    }
    acc
}

/// Pieri structure constant
/// `G^lambda_{mu (1^r)}(q) = q^{n(lambda) - n(mu) - n(1^r)} *
/// prod_i gauss(lambda'_i - lambda'_{i+1}, lambda'_i - mu'_i)_{1/q}`,
/// zero unless `lambda/mu` is a vertical r-strip.
pub fn pieri_g(lambda: &Partition, mu: &Partition, r: u32, q: u64) -> BigInt {
    assert!(q >= 2);
    let field = Rationals;
    let t = BigRational::new(BigInt::one(), BigInt::from(q));
    let strip = strip_coeff(&field, lambda, mu, r, &t);
    if strip == field.zero() {
        return BigInt::from(0);
    }
    let n_col = if r == 0 { 0 } else { r as u64 * (r as u64 - 1) / 2 }; // n((1^r))
    let exp = lambda.n_stat() as i64 - mu.n_stat() as i64 - n_col as i64;
    let qq = BigRational::from(BigInt::from(q));
    let val = strip * power(&qq, exp);
    debug_assert!(val.is_integer() && !val.is_negative());
    val.to_integer()
}

fn power(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        x.pow(e as i32)
    } else {
        x.recip().pow((-e) as i32)
    }
}

/// `P_lambda = q^{-|lambda|} b_lambda(q^{-1})^{-1} Q_lambda.1` in power sums
/// at `t = 1/q`.
pub fn hl_p(lambda: &Partition, t: &BigRational) -> Result<PowerSumPoly<Rationals>> {
    let field = Rationals;
    let q_poly = hl_q(&field, lambda, t)?;
    let b = b_t(&field, lambda, t);
    if b == field.zero() {
        return Err(Error::DivisionByZero("b_lambda(t) vanishes".into()));
    }
    let scale = power(t, lambda.weight() as i64) / b;
    Ok(q_poly.scale(&field, &scale))
}

/// General Hall algebra structure constant `G^lambda_{mu nu}(q)`, through
/// the isomorphism onto symmetric functions: the coefficient of `P_lambda`
/// in `P_mu P_nu` is read off by pairing against `Q_lambda`, then rescaled.
/// Weight mismatch gives zero.
pub fn hall_g(lambda: &Partition, mu: &Partition, nu: &Partition, q: u64) -> Result<BigInt> {
    assert!(q >= 2);
    if lambda.weight() != mu.weight() + nu.weight() {
        return Ok(BigInt::from(0));
    }
    let field = Rationals;
    let t = BigRational::new(BigInt::one(), BigInt::from(q));
    let product = hl_p(mu, &t)?.mul(&field, &hl_p(nu, &t)?);
    let dual = hl_q(&field, lambda, &t)?;
    let g = inner_single(&field, &product, &dual, &Metric::HallLittlewood(t.clone()))?;
    let exp = lambda.n_stat() as i64 - mu.n_stat() as i64 - nu.n_stat() as i64;
    let qq = BigRational::from(BigInt::from(q));
    let val = g * power(&qq, exp);
    if !val.is_integer() || val.is_negative() {
        return Err(Error::InvalidInput(format!(
            "Hall constant G^{lambda:?}_{mu:?},{nu:?}({q}) = {val} is not a nonnegative integer"
        )));
    }
    Ok(val.to_integer())
}
