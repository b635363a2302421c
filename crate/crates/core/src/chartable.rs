//! Class data, character labels, degrees, and the exact value matrix of
//! `GL_n(F_q)`.
//!
//! Conjugacy classes are value-orbit colored partitions of weighted weight
//! `n`; irreducible characters are character-orbit colored partitions of the
//! same weight. The ground-truth value path is the matrix coefficient of
//! vertex operators computed through explicit basis conversion: the
//! character side expands Schur functions into character-group power sums
//! and Fourier-transforms them onto value-orbit power sums; the class side
//! expands Hall-Littlewood elements through Green polynomials; the two meet
//! in the diagonal value-orbit metric. The closed product formula is
//! implemented separately as a cross-check mode.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Rationals;
use crate::combinatorics::{a_q, enumerate_colored, z_t, ColoredPartition, Partition};
use crate::cyclotomic::{Cyclo, CycloCtx, CycloField, Rational};
use crate::error::{Error, Result};
use crate::hall::hall_g;
use crate::orbits::{enumerate_orbits, pairing, Orbit, OrbitKind};
use crate::symfunc::{green_row, inner_colored, schur_in_p, symgroup_char, MultiColorPoly};

/// A conjugacy class label: value-orbit colored partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassLabel(ColoredPartition<Orbit>);

/// An irreducible character label: character-orbit colored partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CharLabel(ColoredPartition<Orbit>);

impl ClassLabel {
    pub fn new(colored: ColoredPartition<Orbit>) -> Result<Self> {
        if colored.support().any(|o| o.kind != OrbitKind::Value) {
            return Err(Error::InvalidInput(
                "class labels are colored by value orbits".into(),
            ));
        }
        Ok(ClassLabel(colored))
    }

    pub fn colored(&self) -> &ColoredPartition<Orbit> {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.weighted_weight()
    }
}

impl CharLabel {
    pub fn new(colored: ColoredPartition<Orbit>) -> Result<Self> {
        if colored.support().any(|o| o.kind != OrbitKind::Character) {
            return Err(Error::InvalidInput(
                "character labels are colored by character orbits".into(),
            ));
        }
        Ok(CharLabel(colored))
    }

    pub fn colored(&self) -> &ColoredPartition<Orbit> {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.weighted_weight()
    }

    /// The label with every orbit representative negated (complex
    /// conjugation on the character group).
    pub fn negate(&self) -> CharLabel {
        CharLabel(ColoredPartition::from_pairs(
            self.0.iter().map(|(o, l)| (o.negate(), l.clone())),
        ))
    }
}

fn render_label(colored: &ColoredPartition<Orbit>) -> String {
    if colored.is_empty() {
        return "{}".to_string();
    }
    let entries: Vec<String> = colored
        .iter()
        .map(|(o, l)| format!("(d={},rep={}):{l}", o.d, o.rep))
        .collect();
    format!("{{{}}}", entries.join(" "))
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_label(&self.0))
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_label(&self.0))
    }
}

/// One colored-partition entry in the serialized label form.
#[derive(Serialize, Deserialize)]
pub struct LabelEntry {
    pub orbit: Orbit,
    pub partition: Partition,
}

pub fn label_to_entries(colored: &ColoredPartition<Orbit>) -> Vec<LabelEntry> {
    colored
        .iter()
        .map(|(o, l)| LabelEntry {
            orbit: o.clone(),
            partition: l.clone(),
        })
        .collect()
}

pub fn entries_to_colored(entries: Vec<LabelEntry>) -> Result<ColoredPartition<Orbit>> {
    let mut colored = ColoredPartition::empty();
    for e in entries {
        let orbit = Orbit::new(e.orbit.kind, e.orbit.q, e.orbit.d, e.orbit.rep)?;
        if colored.get(&orbit).is_some() {
            return Err(Error::InvalidInput("duplicate orbit in label".into()));
        }
        colored.insert(orbit, e.partition);
    }
    Ok(colored)
}

/// `psi_n(q) = prod_{i=1}^n (q^i - 1)`.
pub fn psi(n: u32, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let mut acc = BigInt::one();
    let mut qi = BigInt::one();
    for _ in 1..=n {
        qi *= &qq;
        acc *= &qi - BigInt::one();
    }
    acc
}

/// `|GL_n(F_q)| = q^{n(n-1)/2} psi_n(q)`.
pub fn group_order(n: u32, q: u64) -> BigInt {
    BigInt::from(q).pow(n * (n.max(1) - 1) / 2) * psi(n, q)
}

/// Centralizer order `a_mu = prod_f a_{mu(f)}(q^{d(f)})`.
pub fn centralizer_order(mu: &ClassLabel) -> BigInt {
    let mut acc = BigInt::one();
    for (orbit, lambda) in mu.colored().iter() {
        acc *= a_q(lambda, orbit.q.pow(orbit.d));
    }
    acc
}

/// Class size `|G| / a_mu`.
pub fn class_size(n: u32, q: u64, mu: &ClassLabel) -> BigInt {
    group_order(n, q) / centralizer_order(mu)
}

/// Green's degree formula:
/// `d(lambda) = psi_n(q) prod_phi q_phi^{n(lambda(phi)')} prod_x (q_phi^{h(x)} - 1)^{-1}`.
pub fn degree(lambda: &CharLabel, n: u32, q: u64) -> Result<BigInt> {
    if lambda.weight() != n as u64 {
        return Err(Error::WeightMismatch(lambda.weight(), n as u64));
    }
    let mut acc = BigRational::from(psi(n, q));
    for (orbit, part) in lambda.colored().iter() {
        let q_phi = BigInt::from(orbit.q).pow(orbit.d);
        acc *= BigRational::from(q_phi.clone()).pow(part.conjugate().n_stat() as i32);
        for h in part.hook_lengths() {
            acc /= BigRational::from(q_phi.pow(h) - BigInt::one());
        }
    }
    if !acc.is_integer() || !acc.is_positive() {
        return Err(Error::InvalidInput(format!(
            "degree of {lambda} is {acc}, not a positive integer"
        )));
    }
    Ok(acc.to_integer())
}

/// Shared context for one table computation: the working conductor
/// `m = lcm(q^k - 1 : k <= n)` and the orbit alphabets of degree `<= n`.
pub struct TableContext {
    pub n: u32,
    pub q: u64,
    pub cyclo: Arc<CycloCtx>,
    pub value_orbits: Vec<Orbit>,
    pub char_orbits: Vec<Orbit>,
}

impl TableContext {
    pub fn new(n: u32, q: u64) -> Result<TableContext> {
        let mut m = 1u64;
        for k in 1..=n {
            let level = q
                .checked_pow(k)
                .map(|v| v - 1)
                .ok_or_else(|| Error::BoundExceeded(format!("q^{k} overflows")))?;
            m = num::integer::lcm(m, level.max(1));
        }
        let value_orbits = if n == 0 {
            vec![]
        } else {
            enumerate_orbits(q, n, OrbitKind::Value)?
        };
        let char_orbits = if n == 0 {
            vec![]
        } else {
            enumerate_orbits(q, n, OrbitKind::Character)?
        };
        Ok(TableContext {
            n,
            q,
            cyclo: CycloCtx::new(m),
            value_orbits,
            char_orbits,
        })
    }

    pub fn field(&self) -> CycloField {
        CycloField(self.cyclo.clone())
    }

    /// All class labels, in the deterministic colored enumeration order.
    pub fn class_labels(&self) -> Vec<ClassLabel> {
        enumerate_colored(self.n as u64, &self.value_orbits)
            .into_iter()
            .map(ClassLabel)
            .collect()
    }

    /// All character labels, same order scheme on the dual alphabet.
    pub fn char_labels(&self) -> Vec<CharLabel> {
        enumerate_colored(self.n as u64, &self.char_orbits)
            .into_iter()
            .map(CharLabel)
            .collect()
    }

    /// `q^{d(f)}` as a rational.
    fn q_of(&self, orbit: &Orbit) -> BigRational {
        BigRational::from(BigInt::from(self.q).pow(orbit.d))
    }

    /// Diagonal metric value `<p_kappa(f), p_kappa(f)> = z_kappa(1/q_f) q_f^{-|kappa|}`.
    fn norm_factor(&self, orbit: &Orbit, kappa: &Partition) -> Result<BigRational> {
        let rat = Rationals;
        let t = self.q_of(orbit).recip();
        let z = z_t(&rat, kappa, &t)?;
        Ok(z * t.pow(kappa.weight() as i32))
    }
}

/// Fourier substitution of one character-group power sum onto value-orbit
/// power sums:
/// `p_m(phi) = (-1)^{m d(phi) - 1} sum_{d(f) | m d(phi)} d(f) (phi, f)_{m d(phi)} p_{m d(phi)/d(f)}(f)`.
fn substitute_power_sum(
    ctx: &TableContext,
    phi: &Orbit,
    m: u32,
) -> Result<MultiColorPoly<Orbit, CycloField>> {
    let cf = ctx.field();
    let level = m * phi.d;
    let sign = if (level - 1) % 2 == 0 { 1i64 } else { -1i64 };
    let mut out = MultiColorPoly::zero();
    for f in &ctx.value_orbits {
        if level % f.d != 0 {
            continue;
        }
        let pair = pairing(phi, f, level, &ctx.cyclo)?;
        if pair.is_zero() {
            continue;
        }
        let coeff = pair.scale(&Rational::from(BigInt::from(sign * f.d as i64)));
        let key = ColoredPartition::from_pairs([(
            f.clone(),
            Partition::new(vec![level / f.d]),
        )]);
        out.add_term(&cf, key, coeff);
    }
    Ok(out)
}

/// The character side of the matrix coefficient: expand each Schur factor by
/// the Frobenius formula and push every character-group power sum through
/// the Fourier substitution, multiplying across colors. Coefficients are
/// cyclotomic.
pub fn char_to_p(
    ctx: &TableContext,
    lambda: &CharLabel,
) -> Result<MultiColorPoly<Orbit, CycloField>> {
    let cf = ctx.field();
    let mut result = MultiColorPoly::one(&cf);
    for (phi, part) in lambda.colored().iter() {
        let schur = schur_in_p(part);
        let mut color_poly = MultiColorPoly::zero();
        for (rho, c) in schur.terms() {
            let mut term = MultiColorPoly::monomial(
                &cf,
                ColoredPartition::empty(),
                Cyclo::from_rational(&ctx.cyclo, c.clone()),
            );
            for &m in rho.parts() {
                term = term.mul(&cf, &substitute_power_sum(ctx, phi, m)?);
            }
            color_poly = color_poly.add(&cf, &term);
        }
        result = result.mul(&cf, &color_poly);
    }
    Ok(result)
}

/// The class side: `prod_f q_f^{n(mu(f))} Q_{mu(f)}(f).1` expanded in
/// value-orbit power sums through Green polynomials evaluated at
/// `t = 1/q_f`. Coefficients are rational.
pub fn class_to_q(
    ctx: &TableContext,
    mu: &ClassLabel,
) -> Result<MultiColorPoly<Orbit, Rationals>> {
    let rat = Rationals;
    let mut result = MultiColorPoly::one(&rat);
    for (orbit, part) in mu.colored().iter() {
        let qf = ctx.q_of(orbit);
        let t = qf.recip();
        let scale = qf.pow((part.n_stat() + part.weight()) as i32);
        let row = green_row(part)?;
        let mut single = MultiColorPoly::zero();
        for (rho, x_poly) in row.iter() {
            let x_at = x_poly.eval(&t);
            if x_at.is_zero() {
                continue;
            }
            let z = z_t(&rat, rho, &t)?;
            let coeff = &scale * x_at / z;
            let key = ColoredPartition::from_pairs([(orbit.clone(), rho.clone())]);
            single.add_term(&rat, key, coeff);
        }
        result = result.mul(&rat, &single);
    }
    Ok(result)
}

fn value_from_expansions(
    ctx: &TableContext,
    char_side: &MultiColorPoly<Orbit, CycloField>,
    class_side: &MultiColorPoly<Orbit, CycloField>,
) -> Result<Cyclo> {
    let cf = ctx.field();
    inner_colored(&cf, char_side, class_side, |orbit, kappa| {
        Ok(Cyclo::from_rational(
            &ctx.cyclo,
            ctx.norm_factor(orbit, kappa)?,
        ))
    })
}

/// The exact character value `chi^lambda(c_mu)` as the matrix coefficient of
/// vertex operators.
pub fn character_value(ctx: &TableContext, lambda: &CharLabel, mu: &ClassLabel) -> Result<Cyclo> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let char_side = char_to_p(ctx, lambda)?;
    let cf = ctx.field();
    let class_side =
        class_to_q(ctx, mu)?.map_coeffs(&cf, |c| Cyclo::from_rational(&ctx.cyclo, c.clone()));
    value_from_expansions(ctx, &char_side, &class_side)
}

// ---------------------------------------------------------------- formula

/// Mixed pairing of a character-side power-sum monomial against a
/// value-side one: the sum over bijections of degree-matched parts with the
/// single-pair factor
/// `(-1)^{m d(phi) - 1} m d(phi) (phi, f)_{m d(phi)} / (q^{m d(phi)} - 1)`.
fn mixed_pairing(
    ctx: &TableContext,
    rho_char: &ColoredPartition<Orbit>,
    rho_val: &ColoredPartition<Orbit>,
    pair_cache: &mut HashMap<(Orbit, Orbit, u32), Cyclo>,
) -> Result<Cyclo> {
    let mut left: Vec<(&Orbit, u32)> = Vec::new();
    for (phi, part) in rho_char.iter() {
        for &m in part.parts() {
            left.push((phi, m));
        }
    }
    let mut right: Vec<(&Orbit, u32)> = Vec::new();
    for (f, part) in rho_val.iter() {
        for &k in part.parts() {
            right.push((f, k));
        }
    }
    if left.len() != right.len() {
        return Ok(Cyclo::zero(&ctx.cyclo));
    }
    fn backtrack(
        ctx: &TableContext,
        left: &[(&Orbit, u32)],
        right: &[(&Orbit, u32)],
        used: &mut Vec<bool>,
        depth: usize,
        acc: &Cyclo,
        total: &mut Cyclo,
        pair_cache: &mut HashMap<(Orbit, Orbit, u32), Cyclo>,
    ) -> Result<()> {
        if depth == left.len() {
            *total = total.add(acc)?;
            return Ok(());
        }
        let (phi, m) = left[depth];
        let level = m * phi.d;
        for (j, &(f, k)) in right.iter().enumerate() {
            if used[j] || k * f.d != level {
                continue;
            }
            let key = (phi.clone(), f.clone(), level);
            let pair = match pair_cache.get(&key) {
                Some(p) => p.clone(),
                None => {
                    let p = pairing(phi, f, level, &ctx.cyclo)?;
                    pair_cache.insert(key, p.clone());
                    p
                }
            };
            if pair.is_zero() {
                continue;
            }
            let sign = if (level - 1) % 2 == 0 { 1 } else { -1 };
            let denom = BigInt::from(ctx.q).pow(level) - BigInt::one();
            let scalar = Rational::new(BigInt::from(sign * level as i64), denom);
            let factor = pair.scale(&scalar);
            let next = acc.mul(&factor)?;
            used[j] = true;
            backtrack(ctx, left, right, used, depth + 1, &next, total, pair_cache)?;
            used[j] = false;
        }
        Ok(())
    }
    let mut total = Cyclo::zero(&ctx.cyclo);
    let mut used = vec![false; right.len()];
    let one = Cyclo::one(&ctx.cyclo);
    backtrack(
        ctx,
        &left,
        &right,
        &mut used,
        0,
        &one,
        &mut total,
        pair_cache,
    )?;
    Ok(total)
}

/// The closed product formula for the character value: a sum over pairs of
/// colored partitions of symmetric group characters times Green polynomial
/// products times the mixed power-sum pairing. A cross-check mode for
/// [`character_value`]; disagreements are surfaced by the callers, not
/// reconciled here.
pub fn character_value_formula(
    ctx: &TableContext,
    lambda: &CharLabel,
    mu: &ClassLabel,
) -> Result<Cyclo> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let rat = Rationals;
    // all rho_char: per character color, a partition of that color's weight
    let char_colors: Vec<(&Orbit, &Partition)> = lambda.colored().iter().collect();
    let val_colors: Vec<(&Orbit, &Partition)> = mu.colored().iter().collect();
    let rho_chars = colorwise_partitions(&char_colors);
    let rho_vals = colorwise_partitions(&val_colors);

    let mut pair_cache: HashMap<(Orbit, Orbit, u32), Cyclo> = HashMap::new();
    let mut total = Cyclo::zero(&ctx.cyclo);
    for rho_c in &rho_chars {
        // chi-bar product and z_rho
        let mut cbar = BigInt::one();
        let mut z_rho = BigRational::one();
        for (phi, part) in char_colors.iter().zip(rho_c) {
            cbar *= symgroup_char(phi.1, part)?;
            z_rho *= BigRational::from(part.z_stat());
        }
        if cbar.is_zero() {
            continue;
        }
        let rho_c_colored = ColoredPartition::from_pairs(
            char_colors
                .iter()
                .zip(rho_c)
                .map(|((o, _), p)| ((*o).clone(), p.clone())),
        );
        for rho_v in &rho_vals {
            // X-hat product and Z_rho(q^{-1})
            let mut xhat = BigRational::one();
            let mut z_val = BigRational::one();
            for (fcol, part) in val_colors.iter().zip(rho_v) {
                let qf = ctx.q_of(fcol.0);
                let t = qf.recip();
                let x = crate::symfunc::green_x(fcol.1, part)?;
                xhat *= BigRational::from(qf.to_integer())
                    .pow((fcol.1.n_stat() + fcol.1.weight()) as i32)
                    * x.eval(&t);
                z_val *= z_t(&rat, part, &t)?;
            }
            if xhat.is_zero() {
                continue;
            }
            let rho_v_colored = ColoredPartition::from_pairs(
                val_colors
                    .iter()
                    .zip(rho_v)
                    .map(|((o, _), p)| ((*o).clone(), p.clone())),
            );
            let mix = mixed_pairing(ctx, &rho_c_colored, &rho_v_colored, &mut pair_cache)?;
            if mix.is_zero() {
                continue;
            }
            let scalar = &BigRational::from(cbar.clone()) / &z_rho * &xhat / &z_val;
            total = total.add(&mix.scale(&scalar))?;
        }
    }
    Ok(total)
}

/// Cartesian product of partition choices, one partition of `|part|` per
/// color.
fn colorwise_partitions(colors: &[(&Orbit, &Partition)]) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for (_, part) in colors {
        let choices = crate::combinatorics::enumerate_partitions(part.weight());
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut row = prefix.clone();
                row.push(c.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

// ------------------------------------------------------------------ table

/// One conjugacy class in an assembled table.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub label: ClassLabel,
    pub centralizer: BigInt,
    pub size: BigInt,
}

/// One irreducible character in an assembled table.
#[derive(Clone, Debug)]
pub struct CharData {
    pub label: CharLabel,
    pub degree: BigInt,
}

/// The complete character table: rows are characters, columns are classes.
pub struct CharacterTable {
    pub n: u32,
    pub q: u64,
    pub conductor: u64,
    pub classes: Vec<ClassData>,
    pub characters: Vec<CharData>,
    pub values: Vec<Vec<Cyclo>>,
    pub cyclo: Arc<CycloCtx>,
}

/// Knobs for the assembly.
#[derive(Clone, Debug, Default)]
pub struct TableOptions {
    /// Worker threads for the value-matrix fill; 0 picks the rayon default.
    pub threads: usize,
}

/// Assemble the full table with default options.
pub fn full_table(n: u32, q: u64) -> Result<CharacterTable> {
    full_table_with(n, q, &TableOptions::default())
}

const MAX_LABELS: usize = 50_000;

/// Assemble the full table: enumerate labels, precompute the per-label
/// expansions in a deterministic sequential pre-pass, then fill the value
/// matrix in parallel over cells.
pub fn full_table_with(n: u32, q: u64, opts: &TableOptions) -> Result<CharacterTable> {
    let ctx = TableContext::new(n, q)?;
    let class_labels = ctx.class_labels();
    let char_labels = ctx.char_labels();
    if class_labels.len() > MAX_LABELS {
        return Err(Error::BoundExceeded(format!(
            "{} classes exceeds the label bound {MAX_LABELS}",
            class_labels.len()
        )));
    }
    debug_assert_eq!(class_labels.len(), char_labels.len());

    let cf = ctx.field();
    let mut rows = Vec::with_capacity(char_labels.len());
    for l in &char_labels {
        rows.push(Arc::new(char_to_p(&ctx, l)?));
    }
    let mut cols = Vec::with_capacity(class_labels.len());
    for m in &class_labels {
        let mapped =
            class_to_q(&ctx, m)?.map_coeffs(&cf, |c| Cyclo::from_rational(&ctx.cyclo, c.clone()));
        cols.push(Arc::new(mapped));
    }

    let fill = || -> Result<Vec<Vec<Cyclo>>> {
        rows.par_iter()
            .map(|row| {
                cols.iter()
                    .map(|col| value_from_expansions(&ctx, row, col))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    };
    let values = if opts.threads == 0 {
        fill()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(fill)?
    };

    let classes = class_labels
        .into_iter()
        .map(|label| {
            let centralizer = centralizer_order(&label);
            let size = group_order(n, q) / &centralizer;
            ClassData {
                label,
                centralizer,
                size,
            }
        })
        .collect();
    let characters = char_labels
        .into_iter()
        .map(|label| {
            let degree = degree(&label, n, q)?;
            Ok(CharData { label, degree })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        n,
        q,
        conductor: ctx.cyclo.conductor(),
        classes,
        characters,
        values,
        cyclo: ctx.cyclo.clone(),
    })
}

impl CharacterTable {
    pub fn size(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, label: &ClassLabel) -> Option<usize> {
        self.classes.iter().position(|c| &c.label == label)
    }

    pub fn char_index(&self, label: &CharLabel) -> Option<usize> {
        self.characters.iter().position(|c| &c.label == label)
    }

    pub fn value(&self, i: usize, j: usize) -> &Cyclo {
        &self.values[i][j]
    }

    /// Sum of squared degrees, which must equal the group order.
    pub fn degree_square_sum(&self) -> BigInt {
        self.characters.iter().map(|c| &c.degree * &c.degree).sum()
    }
}

/// Exact orthogonality report. `violations` lists every failed identity.
#[derive(Debug, Default)]
pub struct OrthogonalityReport {
    pub first_ok: bool,
    pub second_ok: bool,
    pub violations: Vec<String>,
}

/// Verify both orthogonality relations exactly:
/// row form `sum_mu |c_mu| chi(mu) conj(chi'(mu)) = |G| delta` and column
/// form `sum_chi chi(mu) conj(chi(nu)) = a_mu delta`.
pub fn verify_orthogonality(table: &CharacterTable) -> OrthogonalityReport {
    let ctx = &table.cyclo;
    let size = table.size();
    let conj: Vec<Vec<Cyclo>> = table
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.conjugate()).collect())
        .collect();
    let order = group_order(table.n, table.q);
    let mut report = OrthogonalityReport {
        first_ok: true,
        second_ok: true,
        violations: vec![],
    };
    for i in 0..size {
        for i2 in i..size {
            let mut acc = Cyclo::zero(ctx);
            for j in 0..size {
                let term = table.values[i][j].mul(&conj[i2][j]).unwrap();
                acc = acc
                    .add(&term.scale(&Rational::from(table.classes[j].size.clone())))
                    .unwrap();
            }
            let expect = if i == i2 {
                Cyclo::from_rational(ctx, Rational::from(order.clone()))
            } else {
                Cyclo::zero(ctx)
            };
            if acc != expect {
                report.first_ok = false;
                report
                    .violations
                    .push(format!("first orthogonality fails at rows {i},{i2}: {acc}"));
            }
        }
    }
    for j in 0..size {
        for j2 in j..size {
            let mut acc = Cyclo::zero(ctx);
            for i in 0..size {
                acc = acc.add(&table.values[i][j].mul(&conj[i][j2]).unwrap()).unwrap();
            }
            let expect = if j == j2 {
                Cyclo::from_rational(ctx, Rational::from(table.classes[j].centralizer.clone()))
            } else {
                Cyclo::zero(ctx)
            };
            if acc != expect {
                report.second_ok = false;
                report
                    .violations
                    .push(format!("second orthogonality fails at columns {j},{j2}: {acc}"));
            }
        }
    }
    report
}

/// Hall-algebra product of two class functions `pi_mu pi_nu` expanded over
/// class labels of the combined weight: coefficient
/// `prod_f G^{lambda(f)}_{mu(f) nu(f)}(q^{d(f)})`.
pub fn hall_product_on_classes(
    mu: &ClassLabel,
    nu: &ClassLabel,
    q: u64,
) -> Result<Vec<(ClassLabel, BigInt)>> {
    let n = (mu.weight() + nu.weight()) as u32;
    let ctx = TableContext::new(n, q)?;
    let mut out = Vec::new();
    for label in ctx.class_labels() {
        let mut coeff = BigInt::one();
        for (orbit, part) in label.colored().iter() {
            let qd = q.pow(orbit.d);
            coeff *= hall_g(
                part,
                &mu.colored().part(orbit),
                &nu.colored().part(orbit),
                qd,
            )?;
            if coeff.is_zero() {
                break;
            }
        }
        // colors present in mu or nu but absent from lambda force zero
        if !coeff.is_zero() {
            let absent = mu
                .colored()
                .support()
                .chain(nu.colored().support())
                .any(|o| label.colored().get(o).is_none());
            if absent {
                coeff = BigInt::zero();
            }
        }
        if !coeff.is_zero() {
            out.push((label, coeff));
        }
    }
    Ok(out)
}

// ------------------------------------------------------------- JSON form

#[derive(Serialize, Deserialize)]
struct CycloJson {
    m: u64,
    coeffs: Vec<[String; 2]>,
}

impl CycloJson {
    fn of(c: &Cyclo) -> CycloJson {
        CycloJson {
            m: c.conductor(),
            coeffs: c
                .coords()
                .iter()
                .map(|r| [r.numer().to_string(), r.denom().to_string()])
                .collect(),
        }
    }

    fn into_cyclo(self, ctx: &Arc<CycloCtx>) -> Result<Cyclo> {
        if self.m != ctx.conductor() {
            return Err(Error::ConductorMismatch(self.m, ctx.conductor()));
        }
        let mut coords = Vec::with_capacity(self.coeffs.len());
        for [n, d] in &self.coeffs {
            let num: BigInt = n
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad numerator {n}")))?;
            let den: BigInt = d
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad denominator {d}")))?;
            if den.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            coords.push(Rational::new(num, den));
        }
        Cyclo::from_coords(ctx, coords)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    label: Vec<LabelEntry>,
    centralizer: String,
    size: String,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    label: Vec<LabelEntry>,
    degree: String,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: u32,
    q: u64,
    conductor: u64,
    classes: Vec<ClassJson>,
    characters: Vec<CharJson>,
    values: Vec<Vec<CycloJson>>,
}

impl CharacterTable {
    /// Deterministic JSON rendering; big integers and rational coordinates
    /// are decimal strings.
    pub fn to_json_string(&self) -> String {
        let json = TableJson {
            n: self.n,
            q: self.q,
            conductor: self.conductor,
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    label: label_to_entries(c.label.colored()),
                    centralizer: c.centralizer.to_string(),
                    size: c.size.to_string(),
                })
                .collect(),
            characters: self
                .characters
                .iter()
                .map(|c| CharJson {
                    label: label_to_entries(c.label.colored()),
                    degree: c.degree.to_string(),
                })
                .collect(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(CycloJson::of).collect())
                .collect(),
        };
        serde_json::to_string(&json).expect("table serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<CharacterTable> {
        let json: TableJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("table json: {e}")))?;
        let cyclo = CycloCtx::new(json.conductor);
        let parse_int = |s: &String| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::InvalidInput(format!("bad integer {s}")))
        };
        let mut classes = Vec::with_capacity(json.classes.len());
        for c in json.classes {
            classes.push(ClassData {
                label: ClassLabel::new(entries_to_colored(c.label)?)?,
                centralizer: parse_int(&c.centralizer)?,
                size: parse_int(&c.size)?,
            });
        }
        let mut characters = Vec::with_capacity(json.characters.len());
        for c in json.characters {
            characters.push(CharData {
                label: CharLabel::new(entries_to_colored(c.label)?)?,
                degree: parse_int(&c.degree)?,
            });
        }
        let mut values = Vec::with_capacity(json.values.len());
        for row in json.values {
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                out.push(v.into_cyclo(&cyclo)?);
            }
            values.push(out);
        }
        Ok(CharacterTable {
            n: json.n,
            q: json.q,
            conductor: json.conductor,
            classes,
            characters,
            values,
            cyclo,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn orbit(kind: OrbitKind, q: u64, d: u32, rep: u64) -> Orbit {
        Orbit::new(kind, q, d, rep).unwrap()
    }

    fn class_label(q: u64, entries: &[(u32, u64, &[u32])]) -> ClassLabel {
        ClassLabel::new(ColoredPartition::from_pairs(entries.iter().map(
            |&(d, rep, parts)| (orbit(OrbitKind::Value, q, d, rep), p(parts)),
        )))
        .unwrap()
    }

    fn char_label(q: u64, entries: &[(u32, u64, &[u32])]) -> CharLabel {
        CharLabel::new(ColoredPartition::from_pairs(entries.iter().map(
            |&(d, rep, parts)| (orbit(OrbitKind::Character, q, d, rep), p(parts)),
        )))
        .unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(1, 7), BigInt::from(6));
        assert_eq!(group_order(2, 2), BigInt::from(6));
        assert_eq!(group_order(3, 2), BigInt::from(168));
        assert_eq!(group_order(2, 3), BigInt::from(48));
        assert_eq!(group_order(4, 2), BigInt::from(20160));
        assert_eq!(group_order(0, 5), BigInt::one());
    }

    #[test]
    fn centralizer_orders_gl2_f2() {
        let identity = class_label(2, &[(1, 0, &[1, 1])]);
        assert_eq!(centralizer_order(&identity), BigInt::from(6));
        let transvection = class_label(2, &[(1, 0, &[2])]);
        assert_eq!(centralizer_order(&transvection), BigInt::from(2));
        assert_eq!(class_size(2, 2, &transvection), BigInt::from(3));
        let order3 = class_label(2, &[(2, 1, &[1])]);
        assert_eq!(centralizer_order(&order3), BigInt::from(3));
        assert_eq!(class_size(2, 2, &order3), BigInt::from(2));
    }

    #[test]
    fn degree_formula_examples() {
        // trivial and Steinberg for a few (n, q)
        for (n, q) in [(2u32, 2u64), (2, 3), (3, 2)] {
            let trivial = char_label(q, &[(1, 0, &vec![1; n as usize])]);
            assert_eq!(degree(&trivial, n, q).unwrap(), BigInt::one());
            let steinberg = char_label(q, &[(1, 0, &[n])]);
            assert_eq!(
                degree(&steinberg, n, q).unwrap(),
                BigInt::from(q).pow(n * (n - 1) / 2)
            );
        }
        // GL_2 cuspidal: degree-2 orbit, single box -> q - 1
        for q in [2u64, 3, 4] {
            let cuspidal = char_label(q, &[(2, 1, &[1])]);
            assert_eq!(degree(&cuspidal, 2, q).unwrap(), BigInt::from(q - 1));
        }
    }

    #[test]
    fn label_counts_match() {
        for (n, q) in [(1u32, 2u64), (2, 2), (2, 3), (3, 2), (4, 2)] {
            let ctx = TableContext::new(n, q).unwrap();
            let classes = ctx.class_labels();
            let chars = ctx.char_labels();
            assert_eq!(classes.len(), chars.len(), "n={n}, q={q}");
            for c in &classes {
                assert_eq!(c.weight(), n as u64);
            }
        }
        // small known counts
        assert_eq!(TableContext::new(2, 2).unwrap().class_labels().len(), 3);
        assert_eq!(TableContext::new(2, 3).unwrap().class_labels().len(), 8);
        assert_eq!(TableContext::new(3, 2).unwrap().class_labels().len(), 6);
        assert_eq!(TableContext::new(4, 2).unwrap().class_labels().len(), 14);
    }

    #[test]
    fn substitution_is_degree_preserving() {
        let ctx = TableContext::new(3, 2).unwrap();
        for lam in ctx.char_labels() {
            let poly = char_to_p(&ctx, &lam).unwrap();
            for (key, _) in poly.terms() {
                assert_eq!(key.weighted_weight(), 3);
            }
        }
    }

    #[test]
    fn substitution_sign_single_term() {
        // the coefficient of p_1(f) in p_2(phi) for d(phi) = 2 carries
        // (-1)^{2*... } hmm: level = m d(phi); for m = 1, d(phi) = 2 the sign
        // is (-1)^{2-1} = -1 times d(f) (phi, f)
        let ctx = TableContext::new(2, 2).unwrap();
        let phi = orbit(OrbitKind::Character, 2, 2, 1);
        let sub = substitute_power_sum(&ctx, &phi, 1).unwrap();
        let f2 = orbit(OrbitKind::Value, 2, 2, 1);
        let key = ColoredPartition::from_pairs([(f2.clone(), p(&[1]))]);
        let got = sub.coeff(&key, &ctx.field());
        let pair = pairing(&phi, &f2, 2, &ctx.cyclo).unwrap();
        let expect = pair.scale(&Rational::from(BigInt::from(-2)));
        assert_eq!(got, expect);
    }

    #[test]
    fn identity_class_expansion_is_elementary() {
        // q^{n(1^n)} Q_{(1^n)}(t-1).1 = psi_n(q) e_n(t-1)
        let ctx = TableContext::new(3, 2).unwrap();
        let idc = class_label(2, &[(1, 0, &[1, 1, 1])]);
        let got = class_to_q(&ctx, &idc).unwrap();
        let rat = Rationals;
        let f1 = orbit(OrbitKind::Value, 2, 1, 0);
        let psi3 = BigRational::from(psi(3, 2));
        let e3 = crate::symfunc::e_in_p(3);
        let expect = MultiColorPoly::from_single_color(&rat, &f1, &e3).scale(&rat, &psi3);
        assert_eq!(got, expect);
    }

    #[test]
    fn gl2_f2_table_is_s3() {
        let table = full_table(2, 2).unwrap();
        assert_eq!(table.size(), 3);
        assert_eq!(table.degree_square_sum(), BigInt::from(6));
        // Steinberg row against (identity, transvection, order-3) columns
        let st = table
            .char_index(&char_label(2, &[(1, 0, &[2])]))
            .unwrap();
        let cols = [
            class_label(2, &[(1, 0, &[1, 1])]),
            class_label(2, &[(1, 0, &[2])]),
            class_label(2, &[(2, 1, &[1])]),
        ];
        let want = [2i64, 0, -1];
        for (j, col) in cols.iter().enumerate() {
            let jj = table.class_index(col).unwrap();
            assert_eq!(
                table.value(st, jj),
                &Cyclo::from_rational(&table.cyclo, Rational::from(BigInt::from(want[j])))
            );
        }
        // trivial character: all-ones row
        let tr = table
            .char_index(&char_label(2, &[(1, 0, &[1, 1])]))
            .unwrap();
        for j in 0..3 {
            assert_eq!(
                table.value(tr, j),
                &Cyclo::one(&table.cyclo),
                "trivial value at column {j}"
            );
        }
        let report = verify_orthogonality(&table);
        assert!(report.first_ok && report.second_ok, "{:?}", report.violations);
    }

    #[test]
    fn degrees_match_identity_column() {
        for (n, q) in [(2u32, 2u64), (2, 3), (3, 2)] {
            let table = full_table(n, q).unwrap();
            let idc = class_label(q, &[(1, 0, &vec![1; n as usize])]);
            let j = table.class_index(&idc).unwrap();
            for (i, c) in table.characters.iter().enumerate() {
                assert_eq!(
                    table.value(i, j),
                    &Cyclo::from_rational(&table.cyclo, Rational::from(c.degree.clone())),
                    "n={n}, q={q}, char {i}"
                );
            }
        }
    }

    #[test]
    fn trivial_character_is_all_ones() {
        for (n, q) in [(2u32, 3u64), (3, 2)] {
            let table = full_table(n, q).unwrap();
            let tr = table
                .char_index(&char_label(q, &[(1, 0, &vec![1; n as usize])]))
                .unwrap();
            for j in 0..table.size() {
                assert_eq!(table.value(tr, j), &Cyclo::one(&table.cyclo));
            }
        }
    }

    #[test]
    fn values_are_algebraic_integers() {
        for (n, q) in [(2u32, 2u64), (2, 3), (3, 2)] {
            let table = full_table(n, q).unwrap();
            for row in &table.values {
                for v in row {
                    assert!(v.is_algebraic_integer());
                }
            }
        }
    }

    #[test]
    fn formula_path_agrees_gl2_f2() {
        let ctx = TableContext::new(2, 2).unwrap();
        for lam in ctx.char_labels() {
            for mu in ctx.class_labels() {
                let direct = character_value(&ctx, &lam, &mu).unwrap();
                let formula = character_value_formula(&ctx, &lam, &mu).unwrap();
                assert_eq!(direct, formula, "lambda={lam}, mu={mu}");
            }
        }
    }

    #[test]
    fn formula_path_agrees_gl2_f3_unipotent() {
        let ctx = TableContext::new(2, 3).unwrap();
        for lam in [char_label(3, &[(1, 0, &[2])]), char_label(3, &[(1, 0, &[1, 1])])] {
            for mu in ctx.class_labels() {
                let direct = character_value(&ctx, &lam, &mu).unwrap();
                let formula = character_value_formula(&ctx, &lam, &mu).unwrap();
                assert_eq!(direct, formula, "lambda={lam}, mu={mu}");
            }
        }
    }

    #[test]
    fn conjugate_character_symmetry_gl2_f3() {
        let table = full_table(2, 3).unwrap();
        for (i, c) in table.characters.iter().enumerate() {
            let neg = c.label.negate();
            let i_neg = table.char_index(&neg).unwrap();
            for j in 0..table.size() {
                assert_eq!(
                    table.value(i_neg, j),
                    &table.value(i, j).conjugate(),
                    "char {i} column {j}"
                );
            }
        }
    }

    #[test]
    fn trivial_table_n0() {
        let table = full_table(0, 2).unwrap();
        assert_eq!(table.size(), 1);
        assert_eq!(table.characters[0].degree, BigInt::one());
        assert_eq!(table.value(0, 0), &Cyclo::one(&table.cyclo));
    }

    #[test]
    fn json_round_trip() {
        let table = full_table(2, 3).unwrap();
        let json = table.to_json_string();
        let back = CharacterTable::from_json_str(&json).unwrap();
        assert_eq!(back.to_json_string(), json);
        assert_eq!(back.size(), table.size());
        for i in 0..table.size() {
            for j in 0..table.size() {
                assert_eq!(table.values[i][j], back.values[i][j]);
            }
        }
    }

    #[test]
    fn weight_mismatch_rejected() {
        let ctx = TableContext::new(2, 2).unwrap();
        let lam = char_label(2, &[(1, 0, &[1])]);
        let mu = class_label(2, &[(1, 0, &[1, 1])]);
        assert!(character_value(&ctx, &lam, &mu).is_err());
    }
}
