//! Brute-force ground truth at tiny scale: enumerate `GL_n(F_q)` as explicit
//! matrices, split it into conjugacy classes, type every class by elementary
//! divisors, and realize parabolic induction and flag permutation characters
//! at the coset level.
//!
//! Everything here is deliberately naive; it exists to check the vertex
//! operator pipeline, never to scale.

pub mod snf;

use std::collections::{HashMap, HashSet};

use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;

use crate::chartable::{centralizer_order, group_order, ClassLabel};
use crate::combinatorics::{ColoredPartition, Partition};
use crate::error::{Error, Result};
use crate::orbits::gf::{FieldRealization, Fq};
use crate::orbits::orbit_of_polynomial;

/// Default cap on brute-forced group orders.
pub const DEFAULT_ORACLE_BOUND: u64 = 10_000;

/// A square matrix over `F_q`, entries encoded row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub entries: Vec<u64>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Mat { n, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, fq: &Fq, other: &Mat) -> Mat {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = fq.add(entries[idx], fq.mul(a, other.at(k, j)));
                }
            }
        }
        Mat { n, entries }
    }

    /// Inverse by Gauss-Jordan elimination; `None` for singular input.
    pub fn inverse(&self, fq: &Fq) -> Option<Mat> {
        let n = self.n;
        let mut a: Vec<u64> = self.entries.clone();
        let mut b = Mat::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    b.swap(col * n + j, pivot * n + j);
                }
            }
            let inv = fq.inv(a[col * n + col]).ok()?;
            for j in 0..n {
                a[col * n + j] = fq.mul(a[col * n + j], inv);
                b[col * n + j] = fq.mul(b[col * n + j], inv);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    a[r * n + j] = fq.sub(a[r * n + j], fq.mul(factor, a[col * n + j]));
                    b[r * n + j] = fq.sub(b[r * n + j], fq.mul(factor, b[col * n + j]));
                }
            }
        }
        Some(Mat { n, entries: b })
    }

    pub fn is_invertible(&self, fq: &Fq) -> bool {
        // rank by elimination on a scratch copy
        let n = self.n;
        let mut a = self.entries.clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return false;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
            }
            let inv = fq.inv(a[col * n + col]).expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col] == 0 {
                    continue;
                }
                let factor = fq.mul(a[r * n + col], inv);
                for j in col..n {
                    a[r * n + j] = fq.sub(a[r * n + j], fq.mul(factor, a[col * n + j]));
                }
            }
        }
        true
    }

    /// Apply to a column vector encoded base-q.
    pub fn apply(&self, fq: &Fq, v: u64) -> u64 {
        let n = self.n;
        let mut digits = vec![0u64; n];
        let mut x = v;
        for d in digits.iter_mut() {
            *d = x % fq.q;
            x /= fq.q;
        }
        let mut out = 0u64;
        for i in (0..n).rev() {
            let mut acc = 0;
            for (j, &d) in digits.iter().enumerate() {
                acc = fq.add(acc, fq.mul(self.at(i, j), d));
            }
            out = out * fq.q + acc;
        }
        out
    }
}

/// The fully enumerated group with conjugacy classes and their labels.
pub struct OracleGroup {
    pub n: usize,
    pub q: u64,
    pub fq: Fq,
    pub elements: Vec<Mat>,
    /// Conjugacy classes as index lists into `elements`.
    pub classes: Vec<Vec<usize>>,
    /// The elementary-divisor type of each class.
    pub class_labels: Vec<ClassLabel>,
}

/// Enumerate all invertible matrices and split into conjugacy classes by
/// closure under conjugation with a generating set (one diagonal generator
/// with a primitive entry plus all transvections).
pub fn enumerate_group(n: usize, q: u64, bound: u64) -> Result<OracleGroup> {
    let order = group_order(n as u32, q);
    if order > BigInt::from(bound) {
        return Err(Error::BoundExceeded(format!(
            "|GL_{n}(F_{q})| = {order} exceeds the oracle bound {bound}"
        )));
    }
    let fq = Fq::new(q)?;
    let total = (q as u128).pow((n * n) as u32);
    let mut elements = Vec::new();
    for code in 0..total {
        let mut entries = Vec::with_capacity(n * n);
        let mut c = code;
        for _ in 0..n * n {
            entries.push((c % q as u128) as u64);
            c /= q as u128;
        }
        let m = Mat { n, entries };
        if m.is_invertible(&fq) {
            elements.push(m);
        }
    }
    debug_assert_eq!(BigInt::from(elements.len()), order);
    let index: HashMap<&Mat, usize> = elements.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // generating set: transvections and one primitive diagonal
    let mut gens: Vec<Mat> = Vec::new();
    let realization = FieldRealization::get(q, 1)?;
    let w = realization.pow_of_generator(1);
    let mut diag = Mat::identity(n);
    diag.entries[0] = w;
    gens.push(diag);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in 1..q {
                let mut t = Mat::identity(n);
                t.entries[i * n + j] = c;
                gens.push(t);
            }
        }
    }
    let gen_pairs: Vec<(Mat, Mat)> = gens
        .iter()
        .map(|g| (g.clone(), g.inverse(&fq).expect("generators are invertible")))
        .collect();

    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut queue = vec![start];
        while let Some(cur) = queue.pop() {
            for (g, ginv) in &gen_pairs {
                let conj = ginv.mul(&fq, &elements[cur]).mul(&fq, g);
                let idx = *index.get(&conj).expect("conjugate stays in the group");
                if class_of[idx] == usize::MAX {
                    class_of[idx] = cid;
                    members.push(idx);
                    queue.push(idx);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }

    let class_labels = classes
        .iter()
        .map(|members| class_type(&fq, &elements[members[0]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleGroup {
        n,
        q,
        fq,
        elements,
        classes,
        class_labels,
    })
}

/// The elementary-divisor type of an invertible matrix: Smith normal form
/// of `tI - g`, each invariant factor split into irreducibles, exponents
/// assembled into the orbit-colored partition.
pub fn class_type(fq: &Fq, g: &Mat) -> Result<ClassLabel> {
    let n = g.n;
    let mut mat = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // t delta_ij - g_ij
            let mut poly = vec![fq.neg(g.at(i, j))];
            if i == j {
                poly.push(1);
            }
            row.push(crate::orbits::gf::poly_trim(poly));
        }
        mat.push(row);
    }
    let invariant_factors = snf::smith_normal_form(fq, &mat)?;
    let mut exponents: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
    for factor in &invariant_factors {
        for (irr, mult) in snf::factor_poly(fq, factor)? {
            exponents.entry(irr).or_default().push(mult);
        }
    }
    let mut colored = ColoredPartition::empty();
    for (irr, mults) in exponents {
        let orbit = orbit_of_polynomial(fq.q, &irr)?;
        colored.insert(orbit, Partition::new(mults));
    }
    ClassLabel::new(colored)
}

/// One verification item, JSON-ready.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: String,
    pub details: String,
}

impl CheckResult {
    pub fn pass(check: &str, details: String) -> Self {
        CheckResult {
            check: check.into(),
            status: "pass".into(),
            details,
        }
    }

    pub fn fail(check: &str, details: String) -> Self {
        CheckResult {
            check: check.into(),
            status: "fail".into(),
            details,
        }
    }

    pub fn skipped(check: &str, details: String) -> Self {
        CheckResult {
            check: check.into(),
            status: "skipped".into(),
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != "fail"
    }
}

/// Compare brute class data against the closed formulas: every class size
/// must equal `|G| / a_mu` for its computed label, and the labels must
/// biject with the colored-partition class labels.
pub fn verify_class_data(n: usize, q: u64, bound: u64) -> Result<Vec<CheckResult>> {
    let group = match enumerate_group(n, q, bound) {
        Ok(g) => g,
        Err(Error::BoundExceeded(msg)) => {
            return Ok(vec![CheckResult::skipped("oracle-class-data", msg)])
        }
        Err(e) => return Err(e),
    };
    let mut results = Vec::new();
    let order = group_order(n as u32, q);
    let mut sizes_ok = true;
    let mut details = String::new();
    for (members, label) in group.classes.iter().zip(&group.class_labels) {
        let expect = &order / centralizer_order(label);
        if BigInt::from(members.len()) != expect {
            sizes_ok = false;
            details = format!(
                "class {label} has {} elements, formula gives {expect}",
                members.len()
            );
            break;
        }
    }
    results.push(if sizes_ok {
        CheckResult::pass(
            "oracle-class-sizes",
            format!("{} classes match |G|/a_mu", group.classes.len()),
        )
    } else {
        CheckResult::fail("oracle-class-sizes", details)
    });

    let ctx = crate::chartable::TableContext::new(n as u32, q)?;
    let expected: HashSet<ClassLabel> = ctx.class_labels().into_iter().collect();
    let got: HashSet<ClassLabel> = group.class_labels.iter().cloned().collect();
    results.push(if expected == got && got.len() == group.classes.len() {
        CheckResult::pass(
            "oracle-class-labels",
            format!("{} labels biject with colored partitions", got.len()),
        )
    } else {
        CheckResult::fail(
            "oracle-class-labels",
            format!(
                "{} distinct labels from {} classes, {} expected",
                got.len(),
                group.classes.len(),
                expected.len()
            ),
        )
    });
    Ok(results)
}

/// Block-parabolic membership: lower-left `n2 x n1` block vanishes.
fn in_parabolic(m: &Mat, n1: usize) -> bool {
    for i in n1..m.n {
        for j in 0..n1 {
            if m.at(i, j) != 0 {
                return false;
            }
        }
    }
    true
}

fn diagonal_block(m: &Mat, from: usize, to: usize) -> Mat {
    let k = to - from;
    let mut entries = Vec::with_capacity(k * k);
    for i in from..to {
        for j in from..to {
            entries.push(m.at(i, j));
        }
    }
    Mat { n: k, entries }
}

/// Coset-level parabolic induction of `pi_{mu1} x pi_{mu2}` from
/// `P_(n1,n2)` to `GL_{n1+n2}`: for every class of the big group, the number
/// of coset representatives `g_i` with `g_i^{-1} g g_i` in the parabolic
/// with diagonal blocks of types exactly `(mu1, mu2)`.
pub fn induce_product(
    n1: usize,
    n2: usize,
    mu1: &ClassLabel,
    mu2: &ClassLabel,
    q: u64,
    bound: u64,
) -> Result<Vec<(ClassLabel, BigInt)>> {
    if mu1.weight() != n1 as u64 || mu2.weight() != n2 as u64 {
        return Err(Error::WeightMismatch(mu1.weight(), n1 as u64));
    }
    let n = n1 + n2;
    let group = enumerate_group(n, q, bound)?;
    let fq = &group.fq;
    // left coset representatives of the parabolic
    let index: HashMap<&Mat, usize> = group
        .elements
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let parabolic: Vec<usize> = group
        .elements
        .iter()
        .enumerate()
        .filter(|(_, m)| in_parabolic(m, n1))
        .map(|(i, _)| i)
        .collect();
    let mut seen = vec![false; group.elements.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, g) in group.elements.iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(i);
        for &p in &parabolic {
            let gp = g.mul(fq, &group.elements[p]);
            seen[*index.get(&gp).expect("product stays in group")] = true;
        }
    }
    let mut out = Vec::with_capacity(group.classes.len());
    for (members, label) in group.classes.iter().zip(&group.class_labels) {
        let g = &group.elements[members[0]];
        let mut count = BigInt::zero();
        for &r in &reps {
            let rep = &group.elements[r];
            let conj = rep
                .inverse(fq)
                .expect("invertible")
                .mul(fq, g)
                .mul(fq, rep);
            if !in_parabolic(&conj, n1) {
                continue;
            }
            let top = diagonal_block(&conj, 0, n1);
            let bottom = diagonal_block(&conj, n1, n);
            let t1 = if n1 == 0 {
                ClassLabel::new(ColoredPartition::empty())?
            } else {
                class_type(fq, &top)?
            };
            let t2 = if n2 == 0 {
                ClassLabel::new(ColoredPartition::empty())?
            } else {
                class_type(fq, &bottom)?
            };
            if &t1 == mu1 && &t2 == mu2 {
                count += BigInt::one();
            }
        }
        out.push((label.clone(), count));
    }
    Ok(out)
}

/// All subspaces of `F_q^n` of the given dimension, each as the full sorted
/// vector set of its points (encoded base-q).
fn subspaces(fq: &Fq, n: usize, dim: usize) -> Vec<Vec<u64>> {
    let qn = (fq.q as u128).pow(n as u32) as u64;
    if dim == 0 {
        return vec![vec![0]];
    }
    let mut spans: HashSet<Vec<u64>> = HashSet::new();
    // iterate over dim-tuples of vectors, keep independent ones, span
    fn rec(
        fq: &Fq,
        qn: u64,
        dim: usize,
        basis: &mut Vec<u64>,
        spans: &mut HashSet<Vec<u64>>,
        n: usize,
    ) {
        if basis.len() == dim {
            let set = span_set(fq, basis, n);
            spans.insert(set);
            return;
        }
        for v in 1..qn {
            basis.push(v);
            if independent(fq, basis, n) {
                rec(fq, qn, dim, basis, spans, n);
            }
            basis.pop();
        }
    }
    rec(fq, qn, dim, &mut Vec::new(), &mut spans, n);
    let mut out: Vec<Vec<u64>> = spans.into_iter().collect();
    out.sort_unstable();
    out
}

fn decode_vec(fq: &Fq, v: u64, n: usize) -> Vec<u64> {
    let mut digits = vec![0u64; n];
    let mut x = v;
    for d in digits.iter_mut() {
        *d = x % fq.q;
        x /= fq.q;
    }
    digits
}

fn independent(fq: &Fq, vectors: &[u64], n: usize) -> bool {
    let mut rows: Vec<Vec<u64>> = vectors.iter().map(|&v| decode_vec(fq, v, n)).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = fq.inv(rows[rank][col]).expect("nonzero");
        for j in 0..n {
            rows[rank][j] = fq.mul(rows[rank][j], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for j in 0..n {
                    rows[r][j] = fq.sub(rows[r][j], fq.mul(factor, rows[rank][j]));
                }
            }
        }
        rank += 1;
    }
    rank == vectors.len()
}

fn span_set(fq: &Fq, basis: &[u64], n: usize) -> Vec<u64> {
    let k = basis.len();
    let mut points = Vec::with_capacity((fq.q as usize).pow(k as u32));
    let decoded: Vec<Vec<u64>> = basis.iter().map(|&v| decode_vec(fq, v, n)).collect();
    let total = (fq.q as u64).pow(k as u32);
    for combo in 0..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut c = combo;
        for _ in 0..k {
            coeffs.push(c % fq.q);
            c /= fq.q;
        }
        let mut acc = vec![0u64; n];
        for (vec, &co) in decoded.iter().zip(&coeffs) {
            if co == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(vec) {
                *a = fq.add(*a, fq.mul(co, x));
            }
        }
        let mut enc = 0u64;
        for &d in acc.iter().rev() {
            enc = enc * fq.q + d;
        }
        points.push(enc);
    }
    points.sort_unstable();
    points.dedup();
    points
}

/// The permutation character of the flag variety of the given composition
/// type: for each class, the number of flags fixed by a representative.
/// `flag_type = [1, n-1]` is the action on lines.
pub fn permutation_character(
    n: usize,
    q: u64,
    flag_type: &[u32],
    bound: u64,
) -> Result<Vec<(ClassLabel, BigInt)>> {
    if flag_type.iter().map(|&k| k as usize).sum::<usize>() != n || flag_type.contains(&0) {
        return Err(Error::InvalidInput(
            "flag type must be a composition of n with positive parts".into(),
        ));
    }
    let group = enumerate_group(n, q, bound)?;
    let fq = &group.fq;
    // proper nested dimensions s_1 < s_2 < ... < n
    let mut dims = Vec::new();
    let mut acc = 0usize;
    for &k in &flag_type[..flag_type.len() - 1] {
        acc += k as usize;
        dims.push(acc);
    }
    let levels: Vec<Vec<Vec<u64>>> = dims.iter().map(|&d| subspaces(fq, n, d)).collect();
    let mut out = Vec::with_capacity(group.classes.len());
    for (members, label) in group.classes.iter().zip(&group.class_labels) {
        let g = &group.elements[members[0]];
        // invariant subspaces per level
        let invariant: Vec<Vec<&Vec<u64>>> = levels
            .iter()
            .map(|subs| {
                subs.iter()
                    .filter(|s| s.iter().all(|&v| s.binary_search(&g.apply(fq, v)).is_ok()))
                    .collect()
            })
            .collect();
        // count chains with inclusion
        fn chains(levels: &[Vec<&Vec<u64>>], prev: Option<&Vec<u64>>) -> u64 {
            match levels.split_first() {
                None => 1,
                Some((first, rest)) => {
                    let mut total = 0;
                    for s in first {
                        if let Some(p) = prev {
                            if !p.iter().all(|v| s.binary_search(v).is_ok()) {
                                continue;
                            }
                        }
                        total += chains(rest, Some(s));
                    }
                    total
                }
            }
        }
        let count = chains(&invariant, None);
        out.push((label.clone(), BigInt::from(count)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::{hall_product_on_classes, TableContext};
    use crate::orbits::{Orbit, OrbitKind};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn class_label(q: u64, entries: &[(u32, u64, &[u32])]) -> ClassLabel {
        ClassLabel::new(ColoredPartition::from_pairs(entries.iter().map(
            |&(d, rep, parts)| {
                (
                    Orbit::new(OrbitKind::Value, q, d, rep).unwrap(),
                    p(parts),
                )
            },
        )))
        .unwrap()
    }

    #[test]
    fn gl2_f2_enumeration() {
        let g = enumerate_group(2, 2, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(g.elements.len(), 6);
        let mut sizes: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn gl1_f3_enumeration() {
        let g = enumerate_group(1, 3, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(g.elements.len(), 2);
        assert_eq!(g.classes.len(), 2);
    }

    #[test]
    fn gl3_f2_enumeration() {
        let g = enumerate_group(3, 2, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(g.elements.len(), 168);
        assert_eq!(g.classes.len(), 6);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_group(4, 2, DEFAULT_ORACLE_BOUND),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn class_types_gl2_f2() {
        let fq = Fq::new(2).unwrap();
        let identity = Mat::identity(2);
        assert_eq!(
            class_type(&fq, &identity).unwrap(),
            class_label(2, &[(1, 0, &[1, 1])])
        );
        let transvection = Mat {
            n: 2,
            entries: vec![1, 1, 0, 1],
        };
        assert_eq!(
            class_type(&fq, &transvection).unwrap(),
            class_label(2, &[(1, 0, &[2])])
        );
        let order3 = Mat {
            n: 2,
            entries: vec![0, 1, 1, 1],
        };
        assert_eq!(
            class_type(&fq, &order3).unwrap(),
            class_label(2, &[(2, 1, &[1])])
        );
    }

    #[test]
    fn class_data_verification() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let results = verify_class_data(n, q, DEFAULT_ORACLE_BOUND).unwrap();
            for r in &results {
                assert_eq!(r.status, "pass", "n={n}, q={q}: {} {}", r.check, r.details);
            }
        }
    }

    #[test]
    fn centralizer_of_identity_is_group_order() {
        let label = class_label(2, &[(1, 0, &[1, 1, 1])]);
        assert_eq!(centralizer_order(&label), group_order(3, 2));
    }

    #[test]
    fn induction_matches_hall_multiplication() {
        // GL_1 x GL_1 -> GL_2 over F_2 and F_3, all label pairs
        for q in [2u64, 3] {
            let ctx1 = TableContext::new(1, q).unwrap();
            let labels = ctx1.class_labels();
            for mu1 in &labels {
                for mu2 in &labels {
                    let induced =
                        induce_product(1, 1, mu1, mu2, q, DEFAULT_ORACLE_BOUND).unwrap();
                    let hall: HashMap<ClassLabel, BigInt> =
                        hall_product_on_classes(mu1, mu2, q)
                            .unwrap()
                            .into_iter()
                            .collect();
                    for (label, count) in induced {
                        let expect = hall.get(&label).cloned().unwrap_or_else(BigInt::zero);
                        assert_eq!(count, expect, "q={q}, mu1={mu1}, mu2={mu2}, at {label}");
                    }
                }
            }
        }
    }

    #[test]
    fn induction_matches_hall_gl1_gl2_f2() {
        let q = 2u64;
        let ctx1 = TableContext::new(1, q).unwrap();
        let ctx2 = TableContext::new(2, q).unwrap();
        for mu1 in ctx1.class_labels() {
            for mu2 in ctx2.class_labels() {
                let induced = induce_product(1, 2, &mu1, &mu2, q, DEFAULT_ORACLE_BOUND).unwrap();
                let hall: HashMap<ClassLabel, BigInt> = hall_product_on_classes(&mu1, &mu2, q)
                    .unwrap()
                    .into_iter()
                    .collect();
                for (label, count) in induced {
                    let expect = hall.get(&label).cloned().unwrap_or_else(BigInt::zero);
                    assert_eq!(count, expect, "mu1={mu1}, mu2={mu2}, at {label}");
                }
            }
        }
    }

    #[test]
    fn induction_unit_law() {
        // inducing against the empty class function of G_0 is the identity
        let q = 2u64;
        let ctx = TableContext::new(2, q).unwrap();
        let empty = ClassLabel::new(ColoredPartition::empty()).unwrap();
        for mu in ctx.class_labels() {
            let induced = induce_product(2, 0, &mu, &empty, q, DEFAULT_ORACLE_BOUND).unwrap();
            for (label, count) in induced {
                let expect = if label == mu { BigInt::one() } else { BigInt::zero() };
                assert_eq!(count, expect, "mu={mu}, at {label}");
            }
        }
    }

    #[test]
    fn line_counts_at_identity() {
        for q in [2u64, 3] {
            let perm = permutation_character(2, q, &[1, 1], DEFAULT_ORACLE_BOUND).unwrap();
            let idc = class_label(q, &[(1, 0, &[1, 1])]);
            let at_identity = perm
                .iter()
                .find(|(l, _)| l == &idc)
                .map(|(_, v)| v.clone())
                .unwrap();
            assert_eq!(at_identity, BigInt::from(q + 1));
        }
        let perm = permutation_character(3, 2, &[1, 2], DEFAULT_ORACLE_BOUND).unwrap();
        let idc = class_label(2, &[(1, 0, &[1, 1, 1])]);
        let at_identity = perm
            .iter()
            .find(|(l, _)| l == &idc)
            .map(|(_, v)| v.clone())
            .unwrap();
        assert_eq!(at_identity, BigInt::from(7));
    }

    #[test]
    fn full_flag_count_gl2() {
        // complete flags in F_2^2: q + 1 at the identity
        let perm = permutation_character(2, 2, &[1, 1], DEFAULT_ORACLE_BOUND).unwrap();
        let total: BigInt = perm.iter().map(|(_, v)| v.clone()).sum::<BigInt>();
        // every class has a nonnegative fixed count; identity dominates
        assert!(total >= BigInt::from(3));
    }
}
