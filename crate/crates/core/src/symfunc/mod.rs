//! Exact symmetric functions in the power-sum basis, single-color and
//! orbit-colored, over a pluggable coefficient field.
//!
//! The power-sum basis is the only structural basis: Schur and
//! Hall-Littlewood elements exist as expansion coefficients produced by
//! [`schur_in_p`] and the vertex operators in [`vertex`], never as separate
//! data types. All inner products are diagonal here.

pub mod vertex;

pub use vertex::{green_row, green_x, hl_q, q_word, vertex_estar_apply, vertex_q_apply};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use once_cell::sync::Lazy;

use crate::coeff::{Field, Rationals};
use crate::combinatorics::{enumerate_partitions, z_t, ColorLabel, ColoredPartition, Partition};
use crate::error::{Error, Result};

/// A polynomial in the power sums `p_1, p_2, ...` of a single color,
/// stored as partition-indexed monomials with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct PowerSumPoly<F: Field> {
    terms: BTreeMap<Partition, F::Elem>,
}

impl<F: Field> PartialEq for PowerSumPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> PowerSumPoly<F> {
    pub fn zero() -> Self {
        PowerSumPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::monomial(field, Partition::empty(), field.one())
    }

    pub fn monomial(field: &F, lambda: Partition, coeff: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert(lambda, coeff);
        }
        PowerSumPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition, field: &F) -> F::Elem {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    /// Largest monomial weight present (0 for the zero polynomial).
    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(|l| l.weight()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, field: &F, lambda: Partition, coeff: F::Elem) {
        if field.is_zero(&coeff) {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &coeff);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(field, l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (l, a) in &self.terms {
            out.add_term(field, l.clone(), field.mul(a, c));
        }
        out
    }

    /// Free commutative product: `p_lambda p_mu = p_{lambda u mu}`.
    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                out.add_term(field, l1.merge(l2), field.mul(c1, c2));
            }
        }
        out
    }

    /// Partial derivative with respect to `p_k`.
    pub fn differentiate(&self, field: &F, k: u32) -> Self {
        let mut out = Self::zero();
        for (l, c) in &self.terms {
            let mult = l.multiplicity(k);
            if mult == 0 {
                continue;
            }
            let reduced = l.remove_part(k).expect("part present");
            out.add_term(field, reduced, field.mul(c, &field.from_i64(mult as i64)));
        }
        out
    }

    /// Map coefficients into another field pointwise.
    pub fn map_coeffs<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> PowerSumPoly<G> {
        let mut out = PowerSumPoly::zero();
        for (l, c) in &self.terms {
            let mapped = f(c);
            if !target.is_zero(&mapped) {
                out.terms.insert(l.clone(), mapped);
            }
        }
        out
    }

    /// Substitute `p_k -> values(k)`, e.g. principal specializations.
    pub fn substitute(&self, field: &F, values: impl Fn(u32) -> Result<F::Elem>) -> Result<F::Elem> {
        let mut acc = field.zero();
        for (l, c) in &self.terms {
            let mut term = c.clone();
            for &part in l.parts() {
                term = field.mul(&term, &values(part)?);
            }
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }
}

impl<F: Field> PowerSumPoly<F>
where
    F::Elem: fmt::Display,
{
    /// Canonical debug rendering: `c1 p[2,1] + c2 p[]`.
    pub fn dump(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(l, c)| {
                let parts = l
                    .parts()
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                format!("({c}) p[{parts}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Diagonal metric choice for [`inner_single`].
pub enum Metric<F: Field> {
    /// `<p_lambda, p_mu> = delta z_lambda` (character-group side).
    Schur,
    /// `<p_lambda, p_mu> = delta z_lambda(t) t^{|lambda|}` with `t = 1/q_f`
    /// (value-orbit side).
    HallLittlewood(F::Elem),
}

/// Diagonal bilinear inner product of single-color polynomials. Bilinear,
/// not sesquilinear: no coefficient conjugation happens here.
pub fn inner_single<F: Field>(
    field: &F,
    u: &PowerSumPoly<F>,
    v: &PowerSumPoly<F>,
    metric: &Metric<F>,
) -> Result<F::Elem> {
    let mut acc = field.zero();
    for (l, cu) in &u.terms {
        let Some(cv) = v.terms.get(l) else { continue };
        let norm = match metric {
            Metric::Schur => field.from_rational(&BigRational::from(l.z_stat())),
            Metric::HallLittlewood(t) => {
                let zt = z_t(field, l, t)?;
                field.mul(&zt, &field.pow(t, l.weight() as i64)?)
            }
        };
        acc = field.add(&acc, &field.mul(&field.mul(cu, cv), &norm));
    }
    Ok(acc)
}

/// `h_m` in the power sums: `sum_{rho |- m} p_rho / z_rho`.
pub fn h_in_p(m: u32) -> PowerSumPoly<Rationals> {
    let field = Rationals;
    let mut out = PowerSumPoly::zero();
    for rho in enumerate_partitions(m as u64) {
        let z = BigRational::from(rho.z_stat());
        out.add_term(&field, rho, z.recip());
    }
    out
}

/// `e_n` in the power sums, with the sign `(-1)^{|lambda| - l(lambda)}`.
pub fn e_in_p(n: u32) -> PowerSumPoly<Rationals> {
    let field = Rationals;
    let mut out = PowerSumPoly::zero();
    for rho in enumerate_partitions(n as u64) {
        let sign = if (rho.weight() - rho.len() as u64) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let coeff = BigRational::new(sign, rho.z_stat());
        out.add_term(&field, rho, coeff);
    }
    out
}

static SCHUR_CACHE: Lazy<RwLock<HashMap<Partition, Arc<PowerSumPoly<Rationals>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// The Schur function `s_lambda` expanded in power sums, as the signed sum
/// over permutations `sum_w sgn(w) h_{lambda + delta - w(delta)}` of
/// complete homogeneous functions.
pub fn schur_in_p(lambda: &Partition) -> Arc<PowerSumPoly<Rationals>> {
    if let Some(hit) = SCHUR_CACHE.read().unwrap().get(lambda) {
        return hit.clone();
    }
    let field = Rationals;
    let l = lambda.len();
    let mut out = PowerSumPoly::zero();
    if l == 0 {
        out = PowerSumPoly::one(&field);
    } else {
        // backtracking over permutations w with h-index lambda_i - i + w(i)
        // >= 0; sign tracked by transposition parity
        let mut used = vec![false; l];
        let mut choice = vec![0usize; l];
        fn rec(
            row: usize,
            l: usize,
            lambda: &Partition,
            used: &mut Vec<bool>,
            choice: &mut Vec<usize>,
            out: &mut PowerSumPoly<Rationals>,
            field: &Rationals,
        ) {
            if row == l {
                // parity of the permutation choice[]
                let mut seen = vec![false; l];
                let mut transpositions = 0;
                for start in 0..l {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut cur = start;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = choice[cur];
                        len += 1;
                    }
                    transpositions += len - 1;
                }
                let mut term = PowerSumPoly::one(field);
                for (i, &j) in choice.iter().enumerate() {
                    let e = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    debug_assert!(e >= 0);
                    if e > 0 {
                        term = term.mul(field, &h_in_p(e as u32));
                    }
                }
                let sign = if transpositions % 2 == 0 {
                    field.one()
                } else {
                    field.from_i64(-1)
                };
                *out = out.add(field, &term.scale(field, &sign));
                return;
            }
            for j in 0..l {
                if used[j] {
                    continue;
                }
                if lambda.parts()[row] as i64 - row as i64 + j as i64 >= 0 {
                    used[j] = true;
                    choice[row] = j;
                    rec(row + 1, l, lambda, used, choice, out, field);
                    used[j] = false;
                }
            }
        }
        rec(0, l, lambda, &mut used, &mut choice, &mut out, &field);
    }
    let arc = Arc::new(out);
    let mut cache = SCHUR_CACHE.write().unwrap();
    cache.entry(lambda.clone()).or_insert(arc).clone()
}

/// Irreducible symmetric group character value `chi^lambda_rho`, read off
/// the Frobenius expansion as `z_rho` times the `p_rho` coefficient of
/// `s_lambda`.
pub fn symgroup_char(lambda: &Partition, rho: &Partition) -> Result<BigInt> {
    if lambda.weight() != rho.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), rho.weight()));
    }
    let field = Rationals;
    let s = schur_in_p(lambda);
    let c = s.coeff(rho, &field) * BigRational::from(rho.z_stat());
    debug_assert!(c.is_integer(), "symmetric group characters are integers");
    Ok(c.to_integer())
}

/// Littlewood's principal specialization
/// `s_lambda(t, t^2, ...) = t^{|lambda| + n(lambda)} prod_x (1 - t^{h(x)})^{-1}`,
/// the evaluation at the geometric variables `x_i = t^i` (so that
/// `p_k -> t^k/(1 - t^k)`).
pub fn littlewood_eval<F: Field>(field: &F, lambda: &Partition, t: &F::Elem) -> Result<F::Elem> {
    let mut acc = field.pow(t, (lambda.weight() + lambda.n_stat()) as i64)?;
    for h in lambda.hook_lengths() {
        let th = field.pow(t, h as i64)?;
        let denom = field.sub(&field.one(), &th);
        if field.is_zero(&denom) {
            return Err(Error::DivisionByZero(format!(
                "1 - t^{h} vanishes in Littlewood's formula"
            )));
        }
        acc = field.mul(&acc, &field.inv(&denom)?);
    }
    Ok(acc)
}

/// A polynomial in power sums of several colors; monomials are colored
/// partitions with the weighted grading.
#[derive(Clone, Debug)]
pub struct MultiColorPoly<L: ColorLabel, F: Field> {
    terms: BTreeMap<ColoredPartition<L>, F::Elem>,
}

impl<L: ColorLabel, F: Field> PartialEq for MultiColorPoly<L, F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<L: ColorLabel, F: Field> MultiColorPoly<L, F> {
    pub fn zero() -> Self {
        MultiColorPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::monomial(field, ColoredPartition::empty(), field.one())
    }

    pub fn monomial(field: &F, key: ColoredPartition<L>, coeff: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert(key, coeff);
        }
        MultiColorPoly { terms }
    }

    /// Lift a single-color polynomial to the colored algebra.
    pub fn from_single_color(field: &F, label: &L, poly: &PowerSumPoly<F>) -> Self {
        let mut out = Self::zero();
        for (l, c) in poly.terms() {
            let key = ColoredPartition::from_pairs([(label.clone(), l.clone())]);
            out.add_term(field, key, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColoredPartition<L>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &ColoredPartition<L>, field: &F) -> F::Elem {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, field: &F, key: ColoredPartition<L>, coeff: F::Elem) {
        if field.is_zero(&coeff) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &coeff);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(field, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, a) in &self.terms {
            out.add_term(field, k.clone(), field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(field, k1.merge(k2), field.mul(c1, c2));
            }
        }
        out
    }

    pub fn map_coeffs<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> MultiColorPoly<L, G> {
        let mut out = MultiColorPoly::zero();
        for (k, c) in &self.terms {
            let mapped = f(c);
            if !target.is_zero(&mapped) {
                out.terms.insert(k.clone(), mapped);
            }
        }
        out
    }
}

/// Colored diagonal inner product: colors pair independently, each with its
/// own metric supplied by `norm(label, lambda)` for the diagonal value
/// `<p_lambda(label), p_lambda(label)>`.
pub fn inner_colored<L: ColorLabel, F: Field>(
    field: &F,
    u: &MultiColorPoly<L, F>,
    v: &MultiColorPoly<L, F>,
    norm: impl Fn(&L, &Partition) -> Result<F::Elem>,
) -> Result<F::Elem> {
    let mut acc = field.zero();
    for (key, cu) in &u.terms {
        let Some(cv) = v.terms.get(key) else { continue };
        let mut factor = field.mul(cu, cv);
        for (label, lambda) in key.iter() {
            factor = field.mul(&factor, &norm(label, lambda)?);
        }
        acc = field.add(&acc, &factor);
    }
    Ok(acc)
}
