//! Pluggable exact coefficient fields.
//!
//! The symmetric-function layer is generic over a [`Field`] handle whose
//! elements are plain data. Three fields are used in practice: the rationals
//! ([`Rationals`]), rational functions in the single variable `t`
//! ([`RatFns`], for Green polynomials computed symbolically), and cyclotomic
//! fields (`CycloField` in the [`crate::cyclotomic`] module, for character
//! values).

use std::fmt::Debug;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;

/// An exact field of coefficients. The handle carries any shared context
/// (e.g. a cyclotomic reduction table); elements are self-contained values.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from(BigInt::from(n)))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("rational inverse of 0".into()));
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
}

/// A rational function in `t`, kept in canonical form: denominator monic and
/// coprime to the numerator. Equality is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    fn reduced(num: QPoly, den: QPoly) -> RatFn {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        if den.is_constant() {
            let lead = den.leading().recip();
            return RatFn {
                num: num.scale(&lead),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading().recip();
        RatFn {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: QPoly) -> RatFn {
        RatFn {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The numerator as a polynomial, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<QPoly> {
        if self.den == QPoly::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("pole of rational function at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }
}

/// The field `Q(t)` of rational functions in one variable.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatFns;

impl RatFns {
    /// The variable `t`.
    pub fn var(&self) -> RatFn {
        RatFn::from_poly(QPoly::var())
    }
}

impl Field for RatFns {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn::from_poly(QPoly::zero())
    }
    fn one(&self) -> RatFn {
        RatFn::from_poly(QPoly::one())
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.den == b.den {
            return RatFn::reduced(a.num.add(&b.num), a.den.clone());
        }
        // work over the lcm of the denominators
        let g = a.den.gcd(&b.den);
        if g.is_constant() {
            return RatFn::reduced(
                a.num.mul(&b.den).add(&b.num.mul(&a.den)),
                a.den.mul(&b.den),
            );
        }
        let da = a.den.divrem(&g).0;
        let db = b.den.divrem(&g).0;
        RatFn::reduced(a.num.mul(&db).add(&b.num.mul(&da)), a.den.mul(&db))
    }
    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        // cross-cancel first so the convolutions stay small
        let g1 = a.num.gcd(&b.den);
        let (an, bd) = if g1.is_constant() {
            (a.num.clone(), b.den.clone())
        } else {
            (a.num.divrem(&g1).0, b.den.divrem(&g1).0)
        };
        let g2 = b.num.gcd(&a.den);
        let (bn, ad) = if g2.is_constant() {
            (b.num.clone(), a.den.clone())
        } else {
            (b.num.divrem(&g2).0, a.den.divrem(&g2).0)
        };
        RatFn::reduced(an.mul(&bn), ad.mul(&bd))
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }
    fn inv(&self, a: &RatFn) -> Result<RatFn> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero("rational function inverse of 0".into()));
        }
        Ok(RatFn::reduced(a.den.clone(), a.num.clone()))
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_zero()
    }
    fn from_rational(&self, r: &BigRational) -> RatFn {
        RatFn::from_poly(QPoly::constant(r.clone()))
    }
}
