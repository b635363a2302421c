//! Vertex operators as executable component extractors on power-sum
//! polynomials.
//!
//! The half vertex operator pair behind the Hall-Littlewood elements, with
//! `q = t^{-1}`:
//!
//! ```text
//! Q(z)  = exp( sum_{k>=1} (q^k - 1)/k p_k z^k ) exp( -sum_{k>=1} q^{-k} d/dp_k z^{-k} )
//! E*(w) = exp( sum_{k>=1} (-1)^{k+1}/(q^k - 1) d/dp_k w^k )
//! ```
//!
//! `Q_n` is the `z^n` component, evaluated with the annihilation exponential
//! first and the creation series second; on polynomial inputs all series
//! truncate at the grade of the target component. `Q_lambda.1 =
//! Q_{lambda_1} ... Q_{lambda_l}.1` realizes `q^{|lambda|}` times the
//! Hall-Littlewood function, and its transition to power sums yields the
//! Green polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::coeff::{Field, RatFns};
use crate::combinatorics::{z_t, Partition};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

use super::PowerSumPoly;

/// Fold `exp(sum_k weight(k) d/dp_k u^k)` applied to `v`, returning the
/// graded layers `0..=max_layer` in the auxiliary variable `u`.
fn fold_derivation_exponential<F: Field>(
    field: &F,
    v: &PowerSumPoly<F>,
    max_layer: usize,
    weight: impl Fn(&F, usize) -> Result<F::Elem>,
) -> Result<Vec<PowerSumPoly<F>>> {
    let mut table: Vec<PowerSumPoly<F>> = vec![PowerSumPoly::zero(); max_layer + 1];
    table[0] = v.clone();
    for k in 1..=max_layer {
        let w = weight(field, k)?;
        if field.is_zero(&w) {
            continue;
        }
        let prev = std::mem::replace(
            &mut table,
            vec![PowerSumPoly::zero(); max_layer + 1],
        );
        for (j, layer) in prev.iter().enumerate() {
            if layer.is_zero() {
                continue;
            }
            table[j] = table[j].add(field, layer);
            let mut diff = layer.clone();
            let mut factor = field.one();
            for c in 1.. {
                diff = diff.differentiate(field, k as u32);
                if diff.is_zero() {
                    break;
                }
                let target = j + k * c;
                if target > max_layer {
                    break;
                }
                factor = field.mul(&factor, &w);
                factor = field.mul(&factor, &field.inv(&field.from_i64(c as i64))?);
                table[target] = table[target].add(field, &diff.scale(field, &factor));
            }
        }
    }
    Ok(table)
}

/// Creation series components: `cr[i]` is the `z^i` coefficient of
/// `exp(sum_k (t^{-k} - 1)/k p_k z^k)`, by the logarithmic derivative
/// recursion `i cr[i] = sum_k (t^{-k} - 1) p_k cr[i-k]`.
fn creation_series<F: Field>(
    field: &F,
    t: &F::Elem,
    up_to: usize,
) -> Result<Vec<PowerSumPoly<F>>> {
    let mut kw = Vec::with_capacity(up_to + 1); // k * w_k = t^{-k} - 1
    kw.push(field.zero());
    for k in 1..=up_to {
        let tk = field.pow(t, -(k as i64))?;
        kw.push(field.sub(&tk, &field.one()));
    }
    let mut cr: Vec<PowerSumPoly<F>> = vec![PowerSumPoly::one(field)];
    for i in 1..=up_to {
        let mut acc = PowerSumPoly::zero();
        for k in 1..=i {
            for (l, c) in cr[i - k].terms() {
                acc.add_term(field, l.add_part(k as u32), field.mul(c, &kw[k]));
            }
        }
        let inv_i = field.inv(&field.from_i64(i as i64))?;
        cr.push(acc.scale(field, &inv_i));
    }
    Ok(cr)
}

/// The `z^n` component of the Hall-Littlewood vertex operator applied to a
/// polynomial, with `t = 1/q` exact or symbolic.
pub fn vertex_q_apply<F: Field>(
    field: &F,
    n: i64,
    v: &PowerSumPoly<F>,
    t: &F::Elem,
) -> Result<PowerSumPoly<F>> {
    if v.is_zero() {
        return Ok(PowerSumPoly::zero());
    }
    let max = v.max_weight() as usize;
    // annihilation weights: -t^k per d/dp_k at z^{-k}
    let ann = fold_derivation_exponential(field, v, max, |f, k| {
        Ok(f.neg(&f.pow(t, k as i64)?))
    })?;
    let max_creation = n + max as i64;
    if max_creation < 0 {
        return Ok(PowerSumPoly::zero());
    }
    let cr = creation_series(field, t, max_creation as usize)?;
    let mut out = PowerSumPoly::zero();
    for (j, aj) in ann.iter().enumerate() {
        let idx = n + j as i64;
        if idx < 0 || aj.is_zero() {
            continue;
        }
        out = out.add(field, &cr[idx as usize].mul(field, aj));
    }
    Ok(out)
}

/// Apply a word of vertex operator components right-to-left to the vacuum:
/// `Q_{a_1} Q_{a_2} ... Q_{a_k}.1`.
pub fn q_word<F: Field>(field: &F, indices: &[i64], t: &F::Elem) -> Result<PowerSumPoly<F>> {
    let mut acc = PowerSumPoly::one(field);
    for &n in indices.iter().rev() {
        acc = vertex_q_apply(field, n, &acc, t)?;
    }
    Ok(acc)
}

/// `Q_lambda.1`, the Hall-Littlewood element scaled by `q^{|lambda|}`.
pub fn hl_q<F: Field>(field: &F, lambda: &Partition, t: &F::Elem) -> Result<PowerSumPoly<F>> {
    let indices: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    q_word(field, &indices, t)
}

/// The `w^r` component of the adjoint half vertex operator `E*` applied to
/// `v` under the value-orbit metric.
pub fn vertex_estar_apply<F: Field>(
    field: &F,
    r: u32,
    v: &PowerSumPoly<F>,
    t: &F::Elem,
) -> Result<PowerSumPoly<F>> {
    if r == 0 {
        return Ok(v.clone());
    }
    // weights (-1)^{k+1} t^k/(1 - t^k) = (-1)^{k+1}/(q^k - 1) per d/dp_k
    let table = fold_derivation_exponential(field, v, r as usize, |f, k| {
        let tk = f.pow(t, k as i64)?;
        let denom = f.sub(&f.one(), &tk);
        if f.is_zero(&denom) {
            return Err(Error::DivisionByZero(format!(
                "1 - t^{k} vanishes in the adjoint vertex operator"
            )));
        }
        let base = f.div(&tk, &denom)?;
        Ok(if k % 2 == 0 { f.neg(&base) } else { base })
    })?;
    Ok(table[r as usize].clone())
}

static GREEN_CACHE: Lazy<RwLock<HashMap<Partition, Arc<BTreeMap<Partition, IntPoly>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// All Green polynomials `X^lambda_rho(t)` for a fixed `lambda`, computed
/// symbolically from the power-sum expansion of `t^{|lambda|} Q_lambda.1`
/// and memoized. Every value is an integer polynomial in `t`.
pub fn green_row(lambda: &Partition) -> Result<Arc<BTreeMap<Partition, IntPoly>>> {
    if let Some(hit) = GREEN_CACHE.read().unwrap().get(lambda) {
        return Ok(hit.clone());
    }
    let field = RatFns;
    let t = field.var();
    let q_lambda = hl_q(&field, lambda, &t)?;
    let t_pow = field.pow(&t, lambda.weight() as i64)?;
    let mut row = BTreeMap::new();
    for (rho, coeff) in q_lambda.terms() {
        // X^lambda_rho(t) = z_rho(t) * t^{|lambda|} * [p_rho] Q_lambda.1
        let zt = z_t(&field, rho, &t)?;
        let x = field.mul(&field.mul(&zt, &t_pow), coeff);
        let poly = x
            .as_polynomial()
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "Green polynomial X^{lambda:?}_{rho:?} is not polynomial in t"
                ))
            })?
            .to_int()
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "Green polynomial X^{lambda:?}_{rho:?} has non-integer coefficients"
                ))
            })?;
        row.insert(rho.clone(), poly);
    }
    let arc = Arc::new(row);
    let mut cache = GREEN_CACHE.write().unwrap();
    Ok(cache.entry(lambda.clone()).or_insert(arc).clone())
}

/// The Green polynomial `X^lambda_rho(t)`; weight mismatch is rejected.
pub fn green_x(lambda: &Partition, rho: &Partition) -> Result<IntPoly> {
    if lambda.weight() != rho.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), rho.weight()));
    }
    let row = green_row(lambda)?;
    Ok(row.get(rho).cloned().unwrap_or_else(IntPoly::zero))
}
