//! Concrete finite field arithmetic: `F_q` for a prime power `q`, polynomial
//! arithmetic over `F_q`, and realized extensions `F_{q^d} = F_q[y]/(g)` with
//! a primitive generator and discrete-log table.
//!
//! Elements of `F_q` (q = p^e) are encoded as integers in `[0, q)` whose
//! base-p digits are the coefficients of the residue polynomial in the base
//! realization. Elements of `F_{q^d}` are likewise encoded in `[0, q^d)` with
//! base-q digits. All the orbit logic upstream works in exponent space; this
//! module exists for the label conversions (minimal polynomials) and for the
//! brute-force oracle.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use std::sync::RwLock;

use crate::error::{Error, Result};

/// Hard bound on realized field sizes (and on the factorizations of
/// `q^d - 1` that primitivity testing needs).
pub const DEFAULT_FIELD_BOUND: u64 = 1_000_000;

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Decompose a prime power `q = p^e`; errors on non-prime-powers.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let f = factor_u64(q);
    if f.len() != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    Ok(f[0])
}

/// The base field `F_q`, `q = p^e`, realized for `e > 1` as
/// `F_p[u]/(h)` with `h` the first monic irreducible of degree `e` (in
/// low-to-high coefficient lexicographic order) whose root is primitive.
#[derive(Clone, Debug)]
pub struct Fq {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// Modulus over `F_p`, low-to-high, length `e + 1`; empty when `e == 1`.
    pub modulus: Vec<u64>,
}

impl Fq {
    pub fn new(q: u64) -> Result<Fq> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            return Ok(Fq {
                p,
                e,
                q,
                modulus: vec![],
            });
        }
        // Bootstrap: arithmetic over F_p is plain modular arithmetic, so the
        // degree-e modulus search runs directly over digit vectors.
        let base = Fq {
            p,
            e: 1,
            q: p,
            modulus: vec![],
        };
        let modulus = find_realization_modulus(&base, e)?;
        Ok(Fq { p, e, q, modulus })
    }

    fn decode(&self, x: u64) -> Vec<u64> {
        debug_assert!(x < self.q);
        let mut digits = vec![0; self.e as usize];
        let mut v = x;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut x = 0;
        for &d in digits.iter().rev() {
            x = x * self.p + d;
        }
        x
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let digits: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&digits)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = self.decode(a);
        let digits: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&digits)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.e as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for k in (self.e as usize..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(self.e as usize) {
                let idx = k - self.e as usize + j;
                prod[idx] = (prod[idx] + c * (self.p - m % self.p)) % self.p;
            }
        }
        prod.truncate(self.e as usize);
        self.encode(&prod)
    }

    pub fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut acc = 1;
        let mut sq = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            k >>= 1;
            sq = self.mul(sq, sq);
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero("inverse of 0 in F_q".into()));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Frobenius automorphism `x -> x^p` applied `k` times.
    pub fn frobenius(&self, a: u64, k: u32) -> u64 {
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.p);
        }
        x
    }
}

// ------- polynomials over F_q, coefficients low-to-high, no trailing zeros

pub fn poly_trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn poly_deg(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn poly_add(fq: &Fq, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fq.add(x, y);
    }
    poly_trim(out)
}

pub fn poly_sub(fq: &Fq, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fq.sub(x, y);
    }
    poly_trim(out)
}

pub fn poly_mul(fq: &Fq, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fq.add(out[i + j], fq.mul(x, y));
        }
    }
    poly_trim(out)
}

pub fn poly_scale(fq: &Fq, a: &[u64], c: u64) -> Vec<u64> {
    poly_trim(a.iter().map(|&x| fq.mul(x, c)).collect())
}

/// Euclidean division `a = q b + r`.
pub fn poly_divrem(fq: &Fq, a: &[u64], b: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero("polynomial division by zero".into()));
    }
    let d = b.len() - 1;
    let lead_inv = fq.inv(b[d])?;
    let mut rem = a.to_vec();
    let mut quot = vec![0; a.len().saturating_sub(d)];
    while rem.len() > d {
        let k = rem.len() - 1 - d;
        let factor = fq.mul(*rem.last().unwrap(), lead_inv);
        if factor != 0 {
            for (j, &bc) in b.iter().enumerate() {
                rem[k + j] = fq.sub(rem[k + j], fq.mul(factor, bc));
            }
            quot[k] = factor;
        }
        rem.pop();
    }
    Ok((poly_trim(quot), poly_trim(rem)))
}

pub fn poly_rem(fq: &Fq, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    Ok(poly_divrem(fq, a, b)?.1)
}

pub fn poly_gcd(fq: &Fq, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(fq, &x, &y)?;
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = fq.inv(lead)?;
        x = poly_scale(fq, &x, inv);
    }
    Ok(x)
}

pub fn poly_monic(fq: &Fq, a: &[u64]) -> Result<Vec<u64>> {
    match a.last() {
        None => Ok(vec![]),
        Some(&lead) => Ok(poly_scale(fq, a, fq.inv(lead)?)),
    }
}

/// `base^k mod m` in `F_q[y]`.
pub fn poly_powmod(fq: &Fq, base: &[u64], mut k: u64, m: &[u64]) -> Result<Vec<u64>> {
    let mut acc = vec![1];
    let mut sq = poly_rem(fq, base, m)?;
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_rem(fq, &poly_mul(fq, &acc, &sq), m)?;
        }
        k >>= 1;
        if k > 0 {
            sq = poly_rem(fq, &poly_mul(fq, &sq, &sq), m)?;
        }
    }
    Ok(acc)
}

/// Irreducibility over `F_q`: `y^{q^d} = y (mod g)` and
/// `gcd(y^{q^{d/l}} - y, g) = 1` for every prime `l | d`.
pub fn poly_is_irreducible(fq: &Fq, g: &[u64]) -> Result<bool> {
    let d = match poly_deg(g) {
        None | Some(0) => return Ok(false),
        Some(d) => d as u32,
    };
    if d == 1 {
        return Ok(true);
    }
    let y = vec![0, 1];
    // iterated Frobenius y^{q^i} mod g
    let mut frob = vec![y.clone()];
    let mut cur = y.clone();
    for _ in 0..d {
        cur = poly_powmod(fq, &cur, fq.q, g)?;
        frob.push(cur.clone());
    }
    if poly_sub(fq, &frob[d as usize], &y) != Vec::<u64>::new() {
        return Ok(false);
    }
    for (l, _) in factor_u64(d as u64) {
        let diff = poly_sub(fq, &frob[(d as u64 / l) as usize], &y);
        let g1 = poly_gcd(fq, &diff, g)?;
        if poly_deg(&g1) != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducible polynomials of exact degree `d` over `F_q`, in
/// low-to-high coefficient lexicographic order.
pub fn irreducibles(fq: &Fq, d: u32) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let total = fq.q.checked_pow(d).ok_or_else(|| {
        Error::BoundExceeded(format!("q^{d} overflows while enumerating polynomials"))
    })?;
    if total > DEFAULT_FIELD_BOUND {
        return Err(Error::BoundExceeded(format!(
            "q^{d} = {total} exceeds the field bound {DEFAULT_FIELD_BOUND}"
        )));
    }
    for idx in 0..total {
        let g = monic_by_index(fq, d, idx);
        if poly_is_irreducible(fq, &g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// The monic degree-d polynomial whose coefficient tuple `(c_0,...,c_{d-1})`
/// is the `idx`-th in lexicographic order (`c_0` most significant).
fn monic_by_index(fq: &Fq, d: u32, idx: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; d as usize + 1];
    coeffs[d as usize] = 1;
    let mut v = idx;
    for i in (0..d as usize).rev() {
        coeffs[i] = v % fq.q;
        v /= fq.q;
    }
    coeffs
}

fn find_realization_modulus(fq: &Fq, d: u32) -> Result<Vec<u64>> {
    let n = fq
        .q
        .checked_pow(d)
        .filter(|&v| v <= DEFAULT_FIELD_BOUND)
        .ok_or_else(|| {
            Error::BoundExceeded(format!(
                "q^{d} exceeds the field bound {DEFAULT_FIELD_BOUND}"
            ))
        })?
        - 1;
    let nfactors = factor_u64(n);
    let total = fq.q.pow(d);
    for idx in 0..total {
        let g = monic_by_index(fq, d, idx);
        if g[0] == 0 {
            continue; // divisible by y, never irreducible of degree >= 1 with primitive root
        }
        if d > 1 && !poly_is_irreducible(fq, &g)? {
            continue;
        }
        // order of y (for d = 1: order of the root -c_0) must be exactly n
        let primitive = if d == 1 {
            let root = fq.neg(g[0]);
            root != 0 && nfactors.iter().all(|&(r, _)| fq.pow(root, n / r) != 1)
        } else {
            let y = vec![0, 1];
            nfactors
                .iter()
                .all(|&(r, _)| poly_powmod(fq, &y, n / r, &g).map(|p| p != vec![1]).unwrap_or(false))
        };
        if primitive {
            return Ok(g);
        }
    }
    Err(Error::InvalidInput(format!(
        "no primitive irreducible of degree {d} over F_{}",
        fq.q
    )))
}

/// A realized extension `F_{q^d}` with a primitive generator: the root `y`
/// of the defining polynomial `g`, chosen as the lexicographically first
/// monic irreducible of degree `d` whose root is primitive. Deterministic
/// and Conway-free.
pub struct FieldRealization {
    pub q: u64,
    pub d: u32,
    pub base: Fq,
    /// Defining polynomial over `F_q`, low-to-high, length `d + 1`.
    pub g: Vec<u64>,
    /// `pows[j]` = encoded `w^j` for the primitive generator `w`.
    pows: Vec<u64>,
    /// Discrete log: `dlog[x] = j` with `pows[j] = x`, for `x != 0`.
    dlog: Vec<u32>,
}

impl FieldRealization {
    fn build(q: u64, d: u32) -> Result<FieldRealization> {
        let base = Fq::new(q)?;
        let size = q
            .checked_pow(d)
            .filter(|&v| v <= DEFAULT_FIELD_BOUND)
            .ok_or_else(|| {
                Error::BoundExceeded(format!(
                    "q^{d} exceeds the field bound {DEFAULT_FIELD_BOUND}"
                ))
            })?;
        let g = find_realization_modulus(&base, d)?;
        let n = size - 1;
        // generator: the class of y itself (encoded q for d > 1);
        // for d = 1 the root of g = y - a is a.
        let w = if d == 1 { base.neg(g[0]) } else { q };
        let mut pows = Vec::with_capacity(n as usize);
        let mut dlog = vec![0u32; size as usize];
        let mut cur = 1u64;
        for j in 0..n {
            pows.push(cur);
            dlog[cur as usize] = j as u32;
            cur = ext_mul_raw(&base, d, &g, cur, w);
        }
        debug_assert_eq!(cur, 1, "generator order must be q^d - 1");
        Ok(FieldRealization {
            q,
            d,
            base,
            g,
            pows,
            dlog,
        })
    }

    /// Shared, memoized realization per `(q, d)`.
    pub fn get(q: u64, d: u32) -> Result<Arc<FieldRealization>> {
        static CACHE: Lazy<RwLock<HashMap<(u64, u32), Arc<FieldRealization>>>> =
            Lazy::new(|| RwLock::new(HashMap::new()));
        if let Some(r) = CACHE.read().unwrap().get(&(q, d)) {
            return Ok(r.clone());
        }
        let built = Arc::new(FieldRealization::build(q, d)?);
        let mut w = CACHE.write().unwrap();
        Ok(w.entry((q, d)).or_insert(built).clone())
    }

    pub fn size(&self) -> u64 {
        self.pows.len() as u64 + 1
    }

    /// `w^j` for the primitive generator.
    pub fn pow_of_generator(&self, j: u64) -> u64 {
        let n = self.pows.len() as u64;
        self.pows[(j % n) as usize]
    }

    /// Discrete log base `w` of a nonzero element.
    pub fn dlog(&self, x: u64) -> Result<u64> {
        if x == 0 || x >= self.size() {
            return Err(Error::InvalidInput(format!("dlog of {x}")));
        }
        Ok(self.dlog[x as usize] as u64)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ext_mul_raw(&self.base, self.d, &self.g, a, b)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (decode_ext(self.q, self.d, a), decode_ext(self.q, self.d, b));
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        encode_ext(self.q, &sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let da = decode_ext(self.q, self.d, a);
        let neg: Vec<u64> = da.iter().map(|&x| self.base.neg(x)).collect();
        encode_ext(self.q, &neg)
    }

    /// Evaluate a polynomial with `F_q` coefficients at an extension element.
    pub fn eval_poly(&self, f: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = self.add(self.mul(acc, x), c); // F_q coeffs embed as constants
        }
        acc
    }

    /// Frobenius `x -> x^q`.
    pub fn frobenius(&self, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let j = self.dlog[a as usize] as u64;
        let n = self.pows.len() as u64;
        self.pows[(((j as u128 * self.q as u128) % n as u128) as u64) as usize]
    }
}

fn decode_ext(q: u64, d: u32, x: u64) -> Vec<u64> {
    let mut digits = vec![0; d as usize];
    let mut v = x;
    for dd in digits.iter_mut() {
        *dd = v % q;
        v /= q;
    }
    digits
}

fn encode_ext(q: u64, digits: &[u64]) -> u64 {
    let mut x = 0;
    for &c in digits.iter().rev() {
        x = x * q + c;
    }
    x
}

fn ext_mul_raw(base: &Fq, d: u32, g: &[u64], a: u64, b: u64) -> u64 {
    let q = base.q;
    if d == 1 {
        return base.mul(a, b);
    }
    let da = decode_ext(q, d, a);
    let db = decode_ext(q, d, b);
    let mut prod = vec![0u64; 2 * d as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(x, y));
        }
    }
    for k in (d as usize..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (j, &m) in g.iter().enumerate().take(d as usize) {
            let idx = k - d as usize + j;
            prod[idx] = base.sub(prod[idx], base.mul(c, m));
        }
    }
    prod.truncate(d as usize);
    encode_ext(q, &prod)
}
