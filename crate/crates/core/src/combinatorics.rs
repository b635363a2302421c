//! Partitions, colored partitions, and the q-series statistics used
//! throughout the calculus: `z_lambda`, `n(lambda)`, `b_lambda(t)`,
//! centralizer orders `a_lambda(q)`, hook lengths, and Gaussian binomials.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{Field, Rationals};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from arbitrary parts; zeros are dropped and the rest sorted
    /// decreasingly.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Part multiplicities as (part, multiplicity), decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate partition: `lambda'_i = #{j : lambda_j >= i}`.
    pub fn conjugate(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let mut out = Vec::with_capacity(max as usize);
        for i in 1..=max {
            out.push(self.parts.iter().filter(|&&p| p >= i).count() as u32);
        }
        Partition { parts: out }
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`, the centralizer order of a
    /// permutation of cycle type `lambda`.
    pub fn z_stat(&self) -> BigInt {
        let mut z = BigInt::one();
        for (part, mult) in self.multiplicities() {
            for k in 1..=mult {
                z *= BigInt::from(part) * BigInt::from(k);
            }
        }
        z
    }

    /// `n(lambda) = sum_i (i-1) lambda_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Hook lengths of all cells, row-major. The multiset has `|lambda|`
    /// entries.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 1..=row {
                let arm = row - j;
                let leg = conj.parts[(j - 1) as usize] - (i as u32 + 1);
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Whether `other` fits inside `self` cell-wise.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.parts.get(i).is_some_and(|&q| q >= p))
    }

    /// Multiset union of parts (the product rule for power-sum monomials).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Remove one part equal to `k`, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Append one part `k` (k >= 1), keeping the sorted invariant.
    pub fn add_part(&self, k: u32) -> Partition {
        assert!(k > 0);
        let mut parts = self.parts.clone();
        let pos = parts.partition_point(|&p| p >= k);
        parts.insert(pos, k);
        Partition { parts }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(D::Error::custom("partition parts must be weakly decreasing"));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(D::Error::custom("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }
}

/// `z_lambda(t) = z_lambda * prod_i (1 - t^{lambda_i})^{-1}`.
///
/// Errors if some `1 - t^{lambda_i}` vanishes.
pub fn z_t<F: Field>(field: &F, lambda: &Partition, t: &F::Elem) -> Result<F::Elem> {
    let mut acc = field.from_rational(&BigRational::from(lambda.z_stat()));
    for &p in lambda.parts() {
        let tp = field.pow(t, p as i64)?;
        let denom = field.sub(&field.one(), &tp);
        if field.is_zero(&denom) {
            return Err(Error::DivisionByZero(format!(
                "1 - t^{p} vanishes in z_lambda(t)"
            )));
        }
        acc = field.mul(&acc, &field.inv(&denom)?);
    }
    Ok(acc)
}

/// `b_lambda(t) = (1-t)^{l(lambda)} prod_i [m_i(lambda)]_t!`, equivalently
/// `prod_i prod_{j=1}^{m_i} (1 - t^j)`.
pub fn b_t<F: Field>(field: &F, lambda: &Partition, t: &F::Elem) -> F::Elem {
    let mut acc = field.one();
    for (_, mult) in lambda.multiplicities() {
        for j in 1..=mult {
            let tj = field.pow(t, j as i64).expect("nonnegative power");
            acc = field.mul(&acc, &field.sub(&field.one(), &tj));
        }
    }
    acc
}

/// `a_lambda(q) = q^{|lambda| + 2 n(lambda)} b_lambda(q^{-1})`: the
/// automorphism count of a finite module of type `lambda` over a DVR with
/// residue field of order `q`. Always a positive integer for `q >= 2`.
pub fn a_q(lambda: &Partition, q: u64) -> BigInt {
    assert!(q >= 2);
    let f = Rationals;
    let qq = BigRational::from(BigInt::from(q));
    let t = qq.recip();
    let b = b_t(&f, lambda, &t);
    let e = lambda.weight() + 2 * lambda.n_stat();
    let val = b * qq.pow(e as i32);
    debug_assert!(val.is_integer() && val.is_positive());
    val.to_integer()
}

/// The Gaussian binomial coefficient as an integer polynomial in `t`.
/// Out-of-range `(m, r)` gives the zero polynomial.
pub fn gauss_binomial_poly(m: u32, r: u32) -> IntPoly {
    if r > m {
        return IntPoly::zero();
    }
    let r = r.min(m - r);
    // q-Pascal: [m r] = [m-1 r-1] + t^r [m-1 r].
    let mut row = vec![IntPoly::one()]; // [k 0] for current k
    for k in 1..=m {
        let top = r.min(k);
        let mut next = Vec::with_capacity(top as usize + 1);
        next.push(IntPoly::one());
        for j in 1..=top {
            let left = row.get(j as usize - 1).cloned().unwrap_or_else(IntPoly::zero);
            let up = row.get(j as usize).cloned().unwrap_or_else(IntPoly::zero);
            next.push(left.add(&up.shift(j as usize)));
        }
        row = next;
    }
    row.swap_remove(r as usize)
}

/// The Gaussian binomial evaluated at a field element `t`.
pub fn gauss_binomial<F: Field>(field: &F, m: u32, r: u32, t: &F::Elem) -> F::Elem {
    let poly = gauss_binomial_poly(m, r);
    let mut acc = field.zero();
    let mut power = field.one();
    for c in poly.coeffs() {
        if !c.is_zero() {
            let term = field.mul(&power, &field.from_rational(&BigRational::from(c.clone())));
            acc = field.add(&acc, &term);
        }
        power = field.mul(&power, t);
    }
    acc
}

/// All partitions of `n` in reverse-lexicographic order:
/// `(n), (n-1,1), ..., (1^n)`.
pub fn enumerate_partitions(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(rem: u64, max: u64, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        let hi = rem.min(max);
        for p in (1..=hi).rev() {
            stack.push(p as u32);
            rec(rem - p, p, stack, out);
            stack.pop();
        }
    }
    rec(n, n, &mut stack, &mut out);
    out
}

/// A color for colored partitions; carries the degree that weights the
/// grading.
pub trait ColorLabel: Clone + Ord + fmt::Debug {
    fn degree(&self) -> u32;
}

/// A partition-valued function on a set of colors. Colors mapped to the
/// empty partition are not stored. The weighted weight is
/// `sum_f degree(f) * |lambda(f)|`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ColoredPartition<L: ColorLabel> {
    assignment: BTreeMap<L, Partition>,
}

impl<L: ColorLabel> ColoredPartition<L> {
    pub fn empty() -> Self {
        ColoredPartition {
            assignment: BTreeMap::new(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (L, Partition)>) -> Self {
        let mut assignment = BTreeMap::new();
        for (label, part) in pairs {
            if !part.is_empty() {
                assignment.insert(label, part);
            }
        }
        ColoredPartition { assignment }
    }

    pub fn get(&self, label: &L) -> Option<&Partition> {
        self.assignment.get(label)
    }

    /// The partition at a color, empty if unassigned.
    pub fn part(&self, label: &L) -> Partition {
        self.assignment.get(label).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Partition)> {
        self.assignment.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &L> {
        self.assignment.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn weighted_weight(&self) -> u64 {
        self.assignment
            .iter()
            .map(|(l, p)| l.degree() as u64 * p.weight())
            .sum()
    }

    /// Total number of parts over all colors.
    pub fn total_length(&self) -> usize {
        self.assignment.values().map(|p| p.len()).sum()
    }

    /// Color-wise multiset union (product of power-sum monomials).
    pub fn merge(&self, other: &Self) -> Self {
        let mut assignment = self.assignment.clone();
        for (label, part) in &other.assignment {
            assignment
                .entry(label.clone())
                .and_modify(|p| *p = p.merge(part))
                .or_insert_with(|| part.clone());
        }
        ColoredPartition { assignment }
    }

    pub fn insert(&mut self, label: L, part: Partition) {
        if part.is_empty() {
            self.assignment.remove(&label);
        } else {
            self.assignment.insert(label, part);
        }
    }
}

/// All colored partitions over the given labels with weighted weight `n`.
/// Deterministic order: labels are consumed in the given order; weights on
/// the earlier labels are chosen as large as possible first, partitions in
/// reverse-lexicographic order.
pub fn enumerate_colored<L: ColorLabel>(n: u64, labels: &[L]) -> Vec<ColoredPartition<L>> {
    assert!(labels.iter().all(|l| l.degree() >= 1));
    let mut out = Vec::new();
    let mut current: Vec<(L, Partition)> = Vec::new();
    fn rec<L: ColorLabel>(
        rem: u64,
        labels: &[L],
        current: &mut Vec<(L, Partition)>,
        out: &mut Vec<ColoredPartition<L>>,
    ) {
        if labels.is_empty() {
            if rem == 0 {
                out.push(ColoredPartition::from_pairs(current.iter().cloned()));
            }
            return;
        }
        let label = &labels[0];
        let d = label.degree() as u64;
        let max_k = rem / d;
        for k in (0..=max_k).rev() {
            if k == 0 {
                rec(rem, &labels[1..], current, out);
                continue;
            }
            for part in enumerate_partitions(k) {
                current.push((label.clone(), part));
                rec(rem - k * d, &labels[1..], current, out);
                current.pop();
            }
        }
    }
    rec(n, labels, &mut current, &mut out);
    out
}
