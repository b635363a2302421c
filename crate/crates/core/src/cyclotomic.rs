//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are vectors of big rationals in the power basis
//! `1, zeta, ..., zeta^{phi(m)-1}` reduced modulo the m-th cyclotomic
//! polynomial, so equality is a coordinate comparison. A table computation
//! fixes one working conductor `m = lcm(q^k - 1 : k <= n)` up front and all
//! values live in that single field; per-element conductor minimization is
//! deliberately not attempted.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::poly::{IntPoly, QPoly};

/// Arbitrary-precision rational, re-exported for the public surface.
pub type Rational = BigRational;

/// The m-th cyclotomic polynomial, by recursive exact division of `x^m - 1`
/// by the cyclotomic polynomials of the proper divisors of `m`.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    assert!(m >= 1);
    // x^m - 1
    let mut xm1 = vec![BigInt::zero(); m as usize + 1];
    xm1[0] = -BigInt::one();
    xm1[m as usize] = BigInt::one();
    let mut num = IntPoly::new(xm1);
    for d in 1..m {
        if m % d == 0 {
            num = num.div_exact(&cyclotomic_polynomial(d));
        }
    }
    num
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Shared reduction context for a fixed conductor: the cyclotomic polynomial
/// and the power-basis coordinates of every `zeta^e` needed by
/// multiplication, conjugation and root embedding.
pub struct CycloCtx {
    m: u64,
    phi: usize,
    modulus: IntPoly,
    /// `red[e]` = coordinates of `x^e mod Phi_m`, for `e < max(m, 2*phi-1)`.
    red: Vec<Vec<BigInt>>,
}

impl CycloCtx {
    pub fn new(m: u64) -> Arc<CycloCtx> {
        assert!(m >= 1);
        let modulus = cyclotomic_polynomial(m);
        let phi = modulus.degree().expect("cyclotomic polynomial is nonzero");
        let span = (m as usize).max(2 * phi.max(1) - 1);
        let mut red: Vec<Vec<BigInt>> = Vec::with_capacity(span);
        for e in 0..span {
            if e < phi {
                let mut v = vec![BigInt::zero(); phi];
                v[e] = BigInt::one();
                red.push(v);
            } else {
                // x^e = x * x^{e-1}, then cancel the degree-phi term against
                // the monic modulus.
                let prev = &red[e - 1];
                let mut v = vec![BigInt::zero(); phi + 1];
                for (i, c) in prev.iter().enumerate() {
                    v[i + 1] = c.clone();
                }
                let lead = v[phi].clone();
                if !lead.is_zero() {
                    for i in 0..phi {
                        let sub = &lead * &modulus.coeff(i);
                        v[i] -= sub;
                    }
                }
                v.truncate(phi);
                red.push(v);
            }
        }
        Arc::new(CycloCtx {
            m,
            phi,
            modulus,
            red,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    fn reduction(&self, e: u64) -> &[BigInt] {
        &self.red[e as usize]
    }
}

impl fmt::Debug for CycloCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloCtx(m={}, phi={})", self.m, self.phi)
    }
}

/// An element of `Q(zeta_m)` for the conductor fixed by its context.
#[derive(Clone)]
pub struct Cyclo {
    ctx: Arc<CycloCtx>,
    coords: Vec<Rational>,
}

impl Cyclo {
    pub fn zero(ctx: &Arc<CycloCtx>) -> Cyclo {
        Cyclo {
            ctx: ctx.clone(),
            coords: vec![Rational::zero(); ctx.phi],
        }
    }

    pub fn one(ctx: &Arc<CycloCtx>) -> Cyclo {
        Cyclo::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<CycloCtx>, r: Rational) -> Cyclo {
        let mut coords = vec![Rational::zero(); ctx.phi];
        coords[0] = r;
        Cyclo {
            ctx: ctx.clone(),
            coords,
        }
    }

    /// Build from explicit power-basis coordinates of length `phi(m)`.
    pub fn from_coords(ctx: &Arc<CycloCtx>, coords: Vec<Rational>) -> Result<Cyclo> {
        if coords.len() != ctx.phi {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                ctx.phi,
                coords.len()
            )));
        }
        Ok(Cyclo {
            ctx: ctx.clone(),
            coords,
        })
    }

    /// `zeta_k^a` embedded as `zeta_m^{a m/k}`. Requires `k | m`.
    pub fn root_of_unity(ctx: &Arc<CycloCtx>, k: u64, a: u64) -> Result<Cyclo> {
        if k == 0 || ctx.m % k != 0 {
            return Err(Error::NonDivisible(k, ctx.m));
        }
        let e = (a % k) * (ctx.m / k);
        let coords = ctx
            .reduction(e % ctx.m)
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        Ok(Cyclo {
            ctx: ctx.clone(),
            coords,
        })
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.m
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn check_ctx(&self, other: &Cyclo) -> Result<()> {
        if self.ctx.m != other.ctx.m {
            return Err(Error::ConductorMismatch(self.ctx.m, other.ctx.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check_ctx(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclo {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check_ctx(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclo {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        Cyclo {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Result<Cyclo> {
        self.check_ctx(other)?;
        // Rational factors bypass the convolution.
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r));
        }
        let phi = self.ctx.phi;
        let mut conv = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut coords: Vec<Rational> = conv[..phi].to_vec();
        for (e, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.ctx.red[e].iter().enumerate() {
                if !r.is_zero() {
                    coords[i] += c * Rational::from(r.clone());
                }
            }
        }
        Ok(Cyclo {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse of 0".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclo::from_rational(&self.ctx, r.recip()));
        }
        let elem = QPoly::new(self.coords.clone());
        let modulus = QPoly::from_int(&self.ctx.modulus);
        let (g, u, _) = elem.ext_gcd(&modulus);
        if g != QPoly::one() {
            // Phi_m is irreducible over Q, so this cannot happen for a
            // nonzero element.
            return Err(Error::DivisionByZero(
                "element not invertible modulo cyclotomic polynomial".into(),
            ));
        }
        let (_, rem) = u.divrem(&modulus);
        let mut coords = rem.coeffs().to_vec();
        coords.resize(self.ctx.phi, Rational::zero());
        Ok(Cyclo {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Cyclo {
        let m = self.ctx.m;
        let mut coords = vec![Rational::zero(); self.ctx.phi];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (m - j as u64) % m;
            for (i, r) in self.ctx.reduction(e).iter().enumerate() {
                if !r.is_zero() {
                    coords[i] += c * Rational::from(r.clone());
                }
            }
        }
        Cyclo {
            ctx: self.ctx.clone(),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in `Q`, i.e. only the `zeta^0` coordinate
    /// is populated.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// True when every coordinate is an integer; since the power basis is an
    /// integral basis of `Q(zeta_m)`, this detects algebraic integers.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coords == other.coords
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = match i {
                0 => String::new(),
                1 => format!("z{}", self.ctx.m),
                _ => format!("z{}^{}", self.ctx.m, i),
            };
            let mag = c.abs();
            let term = if basis.is_empty() {
                format!("{mag}")
            } else if mag.is_one() {
                basis
            } else {
                format!("{mag}*{basis}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{term}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {term}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Cyclo {
    /// `{"m": m, "coeffs": [[num, den], ...]}` with decimal-string num/den.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cyclo", 2)?;
        st.serialize_field("m", &self.ctx.m)?;
        let coeffs: Vec<[String; 2]> = self
            .coords
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Field handle for a fixed cyclotomic context.
#[derive(Clone, Debug)]
pub struct CycloField(pub Arc<CycloCtx>);

impl Field for CycloField {
    type Elem = Cyclo;

    fn zero(&self) -> Cyclo {
        Cyclo::zero(&self.0)
    }
    fn one(&self) -> Cyclo {
        Cyclo::one(&self.0)
    }
    fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.add(b).expect("matching conductors")
    }
    fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.sub(b).expect("matching conductors")
    }
    fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.mul(b).expect("matching conductors")
    }
    fn neg(&self, a: &Cyclo) -> Cyclo {
        a.neg()
    }
    fn inv(&self, a: &Cyclo) -> Result<Cyclo> {
        a.inv()
    }
    fn is_zero(&self, a: &Cyclo) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &Rational) -> Cyclo {
        Cyclo::from_rational(&self.0, r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(euler_phi(105), 48);
        assert_eq!(
            cyclotomic_polynomial(105).degree(),
            Some(48)
        );
    }

    #[test]
    fn roots_of_unity() {
        let ctx = CycloCtx::new(3);
        let z = Cyclo::root_of_unity(&ctx, 3, 1).unwrap();
        let z2 = Cyclo::root_of_unity(&ctx, 3, 2).unwrap();
        assert_eq!(
            z.add(&z2).unwrap(),
            Cyclo::from_rational(&ctx, -Rational::one())
        );
        assert_eq!(z.mul(&z2).unwrap(), Cyclo::one(&ctx));
        let any = Cyclo::root_of_unity(&ctx, 3, 0).unwrap();
        assert_eq!(any, Cyclo::one(&ctx));

        let ctx6 = CycloCtx::new(6);
        let m1 = Cyclo::root_of_unity(&ctx6, 2, 1).unwrap();
        assert_eq!(m1, Cyclo::from_rational(&ctx6, -Rational::one()));
        assert!(Cyclo::root_of_unity(&ctx6, 4, 1).is_err());
    }

    #[test]
    fn conjugate_fixes_real_combinations() {
        let ctx = CycloCtx::new(5);
        let z = Cyclo::root_of_unity(&ctx, 5, 1).unwrap();
        let z4 = Cyclo::root_of_unity(&ctx, 5, 4).unwrap();
        let real = z.add(&z4).unwrap();
        assert_eq!(real.conjugate(), real);
        assert_eq!(z.conjugate(), z4);
    }

    #[test]
    fn inverse_examples() {
        let ctx = CycloCtx::new(12);
        let two = Cyclo::from_rational(&ctx, Rational::from(BigInt::from(2)));
        assert_eq!(
            two.inv().unwrap(),
            Cyclo::from_rational(&ctx, BigRational::new(BigInt::one(), BigInt::from(2)))
        );
        let z = Cyclo::root_of_unity(&ctx, 12, 5).unwrap();
        assert_eq!(z.inv().unwrap().mul(&z).unwrap(), Cyclo::one(&ctx));
        assert!(Cyclo::zero(&ctx).inv().is_err());
    }

    #[test]
    fn conductor_mismatch_rejected() {
        let a = Cyclo::one(&CycloCtx::new(3));
        let b = Cyclo::one(&CycloCtx::new(4));
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn product_over_primitive_roots_reconstructs_cyclotomic() {
        for m in [4u64, 6, 9, 10, 12, 15] {
            let ctx = CycloCtx::new(m);
            // prod_{gcd(a,m)=1} (x - zeta^a) = Phi_m, checked coefficientwise
            // by expanding the product in Q(zeta_m)[x].
            let mut poly = vec![Cyclo::one(&ctx)];
            for a in 1..m {
                if num::integer::gcd(a, m) != 1 {
                    continue;
                }
                let root = Cyclo::root_of_unity(&ctx, m, a).unwrap();
                let mut next = vec![Cyclo::zero(&ctx); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = next[i + 1].add(c).unwrap();
                    next[i] = next[i].sub(&c.mul(&root).unwrap()).unwrap();
                }
                poly = next;
            }
            let phi = cyclotomic_polynomial(m);
            for (i, c) in poly.iter().enumerate() {
                let expect = Cyclo::from_rational(&ctx, Rational::from(phi.coeff(i)));
                assert_eq!(c, &expect, "m={m} coeff {i}");
            }
        }
    }

    fn moebius(mut n: u64) -> i64 {
        let mut mu = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    }

    /// Field trace of zeta_m^e: mu(m/g) * phi(m) / phi(m/g) with g = gcd(e, m).
    fn trace_of_root(m: u64, e: u64) -> Rational {
        let g = num::integer::gcd(e % m, m);
        let k = m / g;
        Rational::from(BigInt::from(moebius(k) * euler_phi(m) as i64 / euler_phi(k) as i64))
    }

    fn trace(x: &Cyclo) -> Rational {
        let m = x.conductor();
        x.coords()
            .iter()
            .enumerate()
            .map(|(e, c)| c * trace_of_root(m, e as u64))
            .sum()
    }

    #[test]
    fn trace_of_norm_is_nonnegative() {
        // z * conj(z) is totally positive, so its field trace is >= 0.
        for m in [10u64, 21, 105] {
            let ctx = CycloCtx::new(m);
            let mut z = Cyclo::zero(&ctx);
            for (i, delta) in [(0u64, 1i64), (3, -3), (7, 2), (9, 7)] {
                let term = Cyclo::root_of_unity(&ctx, m, i % m)
                    .unwrap()
                    .scale(&Rational::from(BigInt::from(delta)));
                z = z.add(&term).unwrap();
            }
            let norm = z.mul(&z.conjugate()).unwrap();
            assert!(trace(&norm) >= Rational::zero(), "m={m}");
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..5).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn field_axioms_fuzz(
            a in proptest::collection::vec(arb_rational(), 4),
            b in proptest::collection::vec(arb_rational(), 4),
            c in proptest::collection::vec(arb_rational(), 4),
        ) {
            let ctx = CycloCtx::new(10); // phi(10) = 4
            let mk = |v: Vec<Rational>| Cyclo { ctx: ctx.clone(), coords: v };
            let (a, b, c) = (mk(a), mk(b), mk(c));
            // associativity and distributivity
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // inverse when nonzero
            if !a.is_zero() {
                prop_assert_eq!(a.inv().unwrap().mul(&a).unwrap(), Cyclo::one(&ctx));
            }
        }
    }
}
