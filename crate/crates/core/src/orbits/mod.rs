//! Frobenius orbits of `F_{q^d}^x` (value orbits, conjugacy data) and of its
//! character group (character orbits), stored as q-cyclotomic cosets of
//! exponents modulo `q^d - 1`.
//!
//! All pairing and character-value logic lives purely in exponent space: an
//! orbit of degree `d` and representative `j` stands for the abstract
//! generator power `w_d^j`, with the cross-degree norm compatibility
//! `w_d = w_k^{(q^k-1)/(q^d-1)}` enforced by the exponent embedding. Concrete
//! field elements only appear in the polynomial conversions backed by
//! [`gf::FieldRealization`].

pub mod gf;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinatorics::ColorLabel;
use crate::cyclotomic::{Cyclo, CycloCtx};
use crate::error::{Error, Result};
use gf::FieldRealization;

/// Which of the two mutually dual orbit families an orbit belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum OrbitKind {
    /// Orbit in `M = union F_{q^d}^x`; labels conjugacy class data and
    /// corresponds to a monic irreducible polynomial other than `t`.
    #[serde(rename = "value")]
    Value,
    /// Orbit in the character group `M^*`; labels irreducible characters.
    #[serde(rename = "character")]
    Character,
}

/// An F-orbit `{j, jq, jq^2, ...}` modulo `q^d - 1`, stored by its minimal
/// representative. The degree `d` is the exact period of the coset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Orbit {
    pub kind: OrbitKind,
    pub q: u64,
    pub d: u32,
    pub rep: u64,
}

impl Orbit {
    /// Validates that the coset of `rep` has exact period `d` and
    /// canonicalizes `rep` to the coset minimum.
    pub fn new(kind: OrbitKind, q: u64, d: u32, rep: u64) -> Result<Orbit> {
        gf::prime_power(q)?;
        if d == 0 {
            return Err(Error::InvalidInput("orbit degree must be >= 1".into()));
        }
        let modulus = checked_modulus(q, d)?;
        let rep = if modulus == 0 { 0 } else { rep % modulus };
        let coset = coset_of(rep, q, modulus);
        if coset.len() != d as usize {
            return Err(Error::InvalidInput(format!(
                "coset of {rep} mod q^{d}-1 has period {}, not {d}",
                coset.len()
            )));
        }
        Ok(Orbit {
            kind,
            q,
            d,
            rep: coset[0],
        })
    }

    /// `q^d - 1`, the exponent modulus. It is 1 exactly for q = 2, d = 1,
    /// where the multiplicative group is trivial and every exponent is 0.
    pub fn modulus(&self) -> u64 {
        self.q.pow(self.d) - 1
    }

    /// The exponents of the coset, ascending; `rep` is the first.
    pub fn coset(&self) -> Vec<u64> {
        coset_of(self.rep, self.q, self.modulus())
    }

    /// The dual orbit under the exponent-identity correspondence between
    /// value orbits and character orbits of the same degree.
    pub fn dual(&self) -> Orbit {
        Orbit {
            kind: match self.kind {
                OrbitKind::Value => OrbitKind::Character,
                OrbitKind::Character => OrbitKind::Value,
            },
            ..self.clone()
        }
    }

    /// The orbit of the negated exponent (complex conjugation on the
    /// character side).
    pub fn negate(&self) -> Orbit {
        let m = self.modulus();
        let rep = if m <= 1 { 0 } else { (m - self.rep % m) % m };
        Orbit::new(self.kind, self.q, self.d, rep).expect("negation preserves the period")
    }
}

impl ColorLabel for Orbit {
    fn degree(&self) -> u32 {
        self.d
    }
}

fn checked_modulus(q: u64, d: u32) -> Result<u64> {
    let size = q
        .checked_pow(d)
        .filter(|&v| v <= gf::DEFAULT_FIELD_BOUND)
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "q^{d} exceeds the field bound {}",
                gf::DEFAULT_FIELD_BOUND
            ))
        })?;
    Ok(size - 1)
}

fn coset_of(rep: u64, q: u64, modulus: u64) -> Vec<u64> {
    if modulus <= 1 {
        return vec![0];
    }
    let rep = rep % modulus;
    let mut coset = vec![rep];
    let mut cur = (rep as u128 * q as u128 % modulus as u128) as u64;
    while cur != rep {
        coset.push(cur);
        cur = (cur as u128 * q as u128 % modulus as u128) as u64;
    }
    coset.sort_unstable();
    coset
}

/// All orbits of degree `<= d_max`, ordered by degree then representative.
/// The number of degree-d value orbits equals the number of monic
/// irreducible degree-d polynomials other than `t`.
pub fn enumerate_orbits(q: u64, d_max: u32, kind: OrbitKind) -> Result<Vec<Orbit>> {
    gf::prime_power(q)?;
    let mut out = Vec::new();
    for d in 1..=d_max {
        let modulus = checked_modulus(q, d)?;
        if modulus <= 1 {
            out.push(Orbit {
                kind,
                q,
                d,
                rep: 0,
            });
            continue;
        }
        let mut seen = vec![false; modulus as usize];
        for rep in 0..modulus {
            if seen[rep as usize] {
                continue;
            }
            let coset = coset_of(rep, q, modulus);
            for &e in &coset {
                seen[e as usize] = true;
            }
            if coset.len() == d as usize {
                out.push(Orbit {
                    kind,
                    q,
                    d,
                    rep: coset[0],
                });
            }
        }
    }
    Ok(out)
}

/// Embed the orbit exponents at level `k`: each exponent `j` maps to
/// `j (q^k - 1)/(q^d - 1) mod (q^k - 1)`. Requires `d | k`.
pub fn embed(o: &Orbit, k: u32) -> Result<Vec<u64>> {
    if k % o.d != 0 {
        return Err(Error::NonDivisible(o.d as u64, k as u64));
    }
    let level = checked_modulus(o.q, k)?;
    let small = o.modulus();
    let factor = level / small;
    Ok(o.coset()
        .into_iter()
        .map(|j| ((j as u128 * factor as u128) % level as u128) as u64)
        .collect())
}

/// The pairing `(phi, f)_k = d(phi)^{-1} sum_{xi in phi} zeta^{xi x}` with
/// both orbits embedded at level `k` and one fixed `x in f`. Zero when
/// either degree fails to divide `k`; independent of the choice of `x`.
pub fn pairing(phi: &Orbit, f: &Orbit, k: u32, ctx: &Arc<CycloCtx>) -> Result<Cyclo> {
    check_pair_kinds(phi, f)?;
    if k % phi.d != 0 || k % f.d != 0 {
        return Ok(Cyclo::zero(ctx));
    }
    let level = checked_modulus(phi.q, k)?;
    let x = embed(f, k)?[0];
    let mut sum = Cyclo::zero(ctx);
    for xi in embed(phi, k)? {
        let e = (xi as u128 * x as u128 % level as u128) as u64;
        sum = sum.add(&Cyclo::root_of_unity(ctx, level, e)?)?;
    }
    let d = crate::cyclotomic::Rational::new(1.into(), phi.d.into());
    Ok(sum.scale(&d))
}

/// The same pairing averaged over `x in f` with one fixed character; equal
/// to [`pairing`] on every valid input.
pub fn pairing_symmetric(phi: &Orbit, f: &Orbit, k: u32, ctx: &Arc<CycloCtx>) -> Result<Cyclo> {
    check_pair_kinds(phi, f)?;
    if k % phi.d != 0 || k % f.d != 0 {
        return Ok(Cyclo::zero(ctx));
    }
    let level = checked_modulus(phi.q, k)?;
    let xi = embed(phi, k)?[0];
    let mut sum = Cyclo::zero(ctx);
    for x in embed(f, k)? {
        let e = (xi as u128 * x as u128 % level as u128) as u64;
        sum = sum.add(&Cyclo::root_of_unity(ctx, level, e)?)?;
    }
    let d = crate::cyclotomic::Rational::new(1.into(), f.d.into());
    Ok(sum.scale(&d))
}

fn check_pair_kinds(phi: &Orbit, f: &Orbit) -> Result<()> {
    if phi.kind != OrbitKind::Character || f.kind != OrbitKind::Value {
        return Err(Error::InvalidInput(
            "pairing takes a character orbit and a value orbit".into(),
        ));
    }
    if phi.q != f.q {
        return Err(Error::InvalidInput("pairing across different q".into()));
    }
    Ok(())
}

/// The monic irreducible polynomial (coefficients over `F_q`, low-to-high)
/// whose roots are the realized powers `w^{rep q^i}` of the primitive
/// generator of `F_{q^d}`.
pub fn min_poly(o: &Orbit) -> Result<Vec<u64>> {
    if o.kind != OrbitKind::Value {
        return Err(Error::InvalidInput(
            "minimal polynomials attach to value orbits".into(),
        ));
    }
    let fr = FieldRealization::get(o.q, o.d)?;
    // prod_i (T - x^{q^i}) over F_{q^d}, coefficients of T low-to-high
    let mut poly: Vec<u64> = vec![1];
    let modulus = o.modulus();
    for i in 0..o.d {
        let exp = (o.rep as u128 * o.q.pow(i) as u128 % modulus as u128) as u64;
        let root = fr.pow_of_generator(exp);
        let mut next = vec![0u64; poly.len() + 1];
        for (j, &c) in poly.iter().enumerate() {
            next[j + 1] = fr.add(next[j + 1], c);
            next[j] = fr.add(next[j], fr.mul(fr.neg(root), c));
        }
        poly = next;
    }
    // all coefficients must land in the base field
    for &c in &poly {
        if c >= o.q {
            return Err(Error::InvalidInput(
                "minimal polynomial has a coefficient outside F_q".into(),
            ));
        }
    }
    Ok(poly)
}

/// Inverse of [`min_poly`]: the unique orbit whose minimal polynomial is the
/// given monic irreducible `f != t` over `F_q`.
pub fn orbit_of_polynomial(q: u64, f: &[u64]) -> Result<Orbit> {
    let f = gf::poly_trim(f.to_vec());
    let fq = gf::Fq::new(q)?;
    let d = match gf::poly_deg(&f) {
        None | Some(0) => {
            return Err(Error::InvalidInput("polynomial must have degree >= 1".into()))
        }
        Some(d) => d as u32,
    };
    if f.last() != Some(&1) {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    if f == vec![0, 1] {
        return Err(Error::InvalidInput("the polynomial t is excluded".into()));
    }
    if !gf::poly_is_irreducible(&fq, &f)? {
        return Err(Error::InvalidInput("polynomial is reducible".into()));
    }
    let fr = FieldRealization::get(q, d)?;
    let n = fr.size() - 1;
    for j in 0..n.max(1) {
        let x = fr.pow_of_generator(j);
        if fr.eval_poly(&f, x) == 0 {
            return Orbit::new(OrbitKind::Value, q, d, j);
        }
    }
    Err(Error::InvalidInput(
        "no root found; polynomial is not irreducible of the stated degree".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Rational;
    use num::{BigInt, One};

    fn ctx_for(q: u64, k_max: u32) -> Arc<CycloCtx> {
        let mut m = 1u64;
        for k in 1..=k_max {
            m = num::integer::lcm(m, q.pow(k) - 1);
        }
        CycloCtx::new(m.max(1))
    }

    #[test]
    fn enumerate_orbit_counts() {
        let v = enumerate_orbits(2, 1, OrbitKind::Value).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].d, v[0].rep), (1, 0));

        let v = enumerate_orbits(2, 2, OrbitKind::Value).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!((v[1].d, v[1].rep), (2, 1));
        assert_eq!(v[1].coset(), vec![1, 2]);

        let v = enumerate_orbits(3, 2, OrbitKind::Value).unwrap();
        let deg1: Vec<u64> = v.iter().filter(|o| o.d == 1).map(|o| o.rep).collect();
        assert_eq!(deg1, vec![0, 1]);
        assert_eq!(v.iter().filter(|o| o.d == 2).count(), 3);
    }

    #[test]
    fn orbit_counts_match_irreducible_counts() {
        for q in [2u64, 3, 4] {
            let fq = gf::Fq::new(q).unwrap();
            for d in 1..=3u32 {
                let orbits = enumerate_orbits(q, d, OrbitKind::Value)
                    .unwrap()
                    .into_iter()
                    .filter(|o| o.d == d)
                    .count();
                let mut irr = gf::irreducibles(&fq, d).unwrap().len();
                if d == 1 {
                    irr -= 1; // exclude t
                }
                assert_eq!(orbits, irr, "q={q}, d={d}");
            }
        }
    }

    #[test]
    fn partition_of_exponents() {
        // sum over d | k of d * #degree-d orbits = q^k - 1
        for q in [2u64, 3, 5] {
            for k in 1..=4u32 {
                let total: u64 = enumerate_orbits(q, k, OrbitKind::Value)
                    .unwrap()
                    .iter()
                    .filter(|o| k % o.d == 0)
                    .map(|o| o.d as u64)
                    .sum();
                assert_eq!(total, q.pow(k) - 1, "q={q}, k={k}");
            }
        }
    }

    #[test]
    fn embed_examples() {
        let o = Orbit::new(OrbitKind::Value, 2, 2, 1).unwrap();
        assert_eq!(embed(&o, 4).unwrap(), vec![5, 10]);
        let t1 = Orbit::new(OrbitKind::Value, 2, 1, 0).unwrap();
        assert_eq!(embed(&t1, 2).unwrap(), vec![0]);
        assert!(embed(&o, 3).is_err());
    }

    #[test]
    fn embed_commutes_with_frobenius() {
        for q in [2u64, 3] {
            for o in enumerate_orbits(q, 2, OrbitKind::Value).unwrap() {
                let k = 4;
                let level = q.pow(k) - 1;
                let img = embed(&o, k).unwrap();
                assert_eq!(img.len(), o.d as usize);
                let mut shifted: Vec<u64> =
                    img.iter().map(|&e| (e as u128 * q as u128 % level as u128) as u64).collect();
                shifted.sort_unstable();
                assert_eq!(shifted, img);
            }
        }
    }

    #[test]
    fn pairing_trivial_cases() {
        let ctx = ctx_for(2, 2);
        let phi2 = Orbit::new(OrbitKind::Character, 2, 2, 1).unwrap();
        let f1 = Orbit::new(OrbitKind::Value, 2, 1, 0).unwrap();
        // f = t - 1 pairs to 1 with anything
        assert_eq!(
            pairing(&phi2, &f1, 2, &ctx).unwrap(),
            Cyclo::one(&ctx)
        );
        // trivial character pairs to 1
        let phi0 = Orbit::new(OrbitKind::Character, 2, 1, 0).unwrap();
        let f2 = Orbit::new(OrbitKind::Value, 2, 2, 1).unwrap();
        assert_eq!(pairing(&phi0, &f2, 2, &ctx).unwrap(), Cyclo::one(&ctx));
        // degree non-divisibility vanishes
        assert!(pairing(&phi2, &f1, 1, &ctx).unwrap().is_zero());
    }

    #[test]
    fn pairing_root_sum_example() {
        // q=2, k=2: (phi, f) with both the degree-2 orbit {1,2} mod 3 gives
        // (zeta_3 + zeta_3^2)/2 = -1/2.
        let ctx = ctx_for(2, 2);
        let phi = Orbit::new(OrbitKind::Character, 2, 2, 1).unwrap();
        let f = Orbit::new(OrbitKind::Value, 2, 2, 1).unwrap();
        let got = pairing(&phi, &f, 2, &ctx).unwrap();
        let expect = Cyclo::from_rational(&ctx, Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(got, expect);
    }

    #[test]
    fn pairing_symmetric_single_term() {
        // q=3, k=1: phi={1}, f={1} mod 2 -> zeta_2 = -1
        let ctx = ctx_for(3, 1);
        let phi = Orbit::new(OrbitKind::Character, 3, 1, 1).unwrap();
        let f = Orbit::new(OrbitKind::Value, 3, 1, 1).unwrap();
        let got = pairing_symmetric(&phi, &f, 1, &ctx).unwrap();
        assert_eq!(
            got,
            Cyclo::from_rational(&ctx, -Rational::one())
        );
    }

    #[test]
    fn pairing_forms_agree_exhaustively() {
        for q in [2u64, 3] {
            let k_max = if q == 2 { 4 } else { 3 };
            let ctx = ctx_for(q, k_max);
            let phis = enumerate_orbits(q, k_max, OrbitKind::Character).unwrap();
            let fs = enumerate_orbits(q, k_max, OrbitKind::Value).unwrap();
            for k in 1..=k_max {
                for phi in &phis {
                    for f in &fs {
                        let a = pairing(phi, f, k, &ctx).unwrap();
                        let b = pairing_symmetric(phi, f, k, &ctx).unwrap();
                        assert_eq!(a, b, "q={q}, k={k}, phi={phi:?}, f={f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_independent_of_orbit_point() {
        // replacing the fixed x in f by any other coset point leaves the
        // pairing unchanged
        let q = 3;
        let ctx = ctx_for(q, 2);
        let phis = enumerate_orbits(q, 2, OrbitKind::Character).unwrap();
        let fs = enumerate_orbits(q, 2, OrbitKind::Value).unwrap();
        for phi in &phis {
            for f in &fs {
                let k = 2;
                let level = q.pow(k) - 1;
                let reference = pairing(phi, f, k, &ctx).unwrap();
                for x in embed(f, k).unwrap() {
                    let mut sum = Cyclo::zero(&ctx);
                    for xi in embed(phi, k).unwrap() {
                        let e = (xi as u128 * x as u128 % level as u128) as u64;
                        sum = sum.add(&Cyclo::root_of_unity(&ctx, level, e).unwrap()).unwrap();
                    }
                    let got = sum.scale(&Rational::new(BigInt::one(), BigInt::from(phi.d)));
                    assert_eq!(got, reference);
                }
            }
        }
    }

    #[test]
    fn second_orthogonality_over_orbits() {
        // For fixed k: sum over all characters of M_k of zeta^{a(x-y)}
        // equals (q^k - 1) [x = y]; characters grouped by orbit embedding.
        for (q, k) in [(2u64, 2u32), (2, 4), (3, 2), (5, 2)] {
            let level = q.pow(k) - 1;
            if level > 1000 {
                continue;
            }
            let ctx = ctx_for(q, k);
            let phis = enumerate_orbits(q, k, OrbitKind::Character).unwrap();
            for x in 0..level.min(6) {
                for y in 0..level.min(6) {
                    let mut sum = Cyclo::zero(&ctx);
                    for phi in phis.iter().filter(|o| k % o.d == 0) {
                        for xi in embed(phi, k).unwrap() {
                            let diff = (level + x - y) % level;
                            let e = (xi as u128 * diff as u128 % level as u128) as u64;
                            sum = sum
                                .add(&Cyclo::root_of_unity(&ctx, level, e).unwrap())
                                .unwrap();
                        }
                    }
                    let expect = if x == y {
                        Cyclo::from_rational(&ctx, Rational::from(BigInt::from(level)))
                    } else {
                        Cyclo::zero(&ctx)
                    };
                    assert_eq!(sum, expect, "q={q}, k={k}, x={x}, y={y}");
                }
            }
        }
    }

    #[test]
    fn min_poly_examples() {
        let t1 = Orbit::new(OrbitKind::Value, 2, 1, 0).unwrap();
        assert_eq!(min_poly(&t1).unwrap(), vec![1, 1]); // t - 1 = t + 1 over F_2
        let f2 = Orbit::new(OrbitKind::Value, 2, 2, 1).unwrap();
        assert_eq!(min_poly(&f2).unwrap(), vec![1, 1, 1]); // t^2 + t + 1
        let f3 = Orbit::new(OrbitKind::Value, 3, 1, 1).unwrap();
        assert_eq!(min_poly(&f3).unwrap(), vec![1, 1]); // t + 1 (root 2)
    }

    #[test]
    fn orbit_of_polynomial_examples() {
        let o = orbit_of_polynomial(2, &[1, 1]).unwrap();
        assert_eq!((o.d, o.rep), (1, 0));
        let o = orbit_of_polynomial(2, &[1, 1, 1]).unwrap();
        assert_eq!((o.d, o.rep), (2, 1));
        assert!(orbit_of_polynomial(2, &[0, 1]).is_err()); // t excluded
        assert!(orbit_of_polynomial(2, &[1, 0, 1]).is_err()); // (t+1)^2 reducible
    }

    #[test]
    fn min_poly_round_trip() {
        for q in [2u64, 3, 4] {
            for o in enumerate_orbits(q, 3, OrbitKind::Value).unwrap() {
                let f = min_poly(&o).unwrap();
                assert_eq!(orbit_of_polynomial(q, &f).unwrap(), o, "q={q}, o={o:?}");
            }
        }
    }

    #[test]
    fn orbit_canonicalization_and_validation() {
        // rep canonicalizes to the coset minimum
        let o = Orbit::new(OrbitKind::Value, 2, 2, 2).unwrap();
        assert_eq!(o.rep, 1);
        // degree must be the exact period
        assert!(Orbit::new(OrbitKind::Value, 2, 2, 0).is_err());
        assert!(Orbit::new(OrbitKind::Value, 3, 2, 4).is_err());
    }
}
