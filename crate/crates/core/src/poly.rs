//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored low-to-high with no trailing zeros, so the empty
//! vector is the zero polynomial. These are internal workhorses for the
//! cyclotomic reduction context and the rational-function coefficient field;
//! [`IntPoly`] is also the public result type of Green polynomials and of
//! `cyclotomic_polynomial`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// A polynomial with integer coefficients, low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial `x`.
    pub fn var() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPoly::new(out)
    }

    /// Exact division; panics if the remainder is nonzero. Used where the
    /// algebra guarantees exactness (cyclotomic polynomial recursion).
    pub fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = QPoly::from_int(self).divrem(&QPoly::from_int(other));
        assert!(r.is_zero(), "inexact polynomial division");
        q.to_int().expect("integer quotient expected")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_at_zero(&self) -> BigInt {
        self.coeff(0)
    }

    /// Render with the given variable name, terms low-to-high: `-1 + t^2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let piece = if i == 0 {
                format!("{mag}")
            } else {
                let pow = if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                };
                if mag.is_one() {
                    pow
                } else {
                    format!("{mag}*{pow}")
                }
            };
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(&piece);
        }
        s
    }
}

/// A polynomial with rational coefficients, low-to-high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn var() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        QPoly::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    /// Back to integer coefficients, or `None` if any denominator is not 1.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q*other + r` with `deg r < deg other`.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let d = other.degree().unwrap();
        let lead_inv = other.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let idx = k + j;
                    let v = &rem[idx] - &factor * b;
                    rem[idx] = v;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic gcd. The gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        // Fast paths: constants and pure monomials cover most coefficient
        // denominators arising from the vertex operator weights.
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return QPoly::one();
        }
        if let Some(k) = self.monomial_degree() {
            return QPoly::monomial_one(k.min(other.valuation()));
        }
        if let Some(k) = other.monomial_degree() {
            return QPoly::monomial_one(k.min(self.valuation()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn monomial_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        if self.coeffs[..d].iter().all(|c| c.is_zero()) {
            Some(d)
        } else {
            None
        }
    }

    /// Largest `k` with `x^k` dividing the polynomial (0 for zero input).
    fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn monomial_one(k: usize) -> QPoly {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        QPoly::new(coeffs)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = QPoly::one();
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading().recip();
        (
            r0.scale(&lead),
            s0.scale(&lead),
            t0.scale(&lead),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}
