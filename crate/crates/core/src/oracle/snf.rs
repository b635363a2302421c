//! Smith normal form of polynomial matrices over `F_q[t]`, with the
//! smallest-degree pivot rule, plus the irreducible factorization needed to
//! read off elementary divisors.

use crate::error::Result;
use crate::orbits::gf::{
    irreducibles, poly_add, poly_deg, poly_divrem, poly_monic, poly_mul, poly_sub, Fq,
};

type Poly = Vec<u64>;

/// Smith normal form over `F_q[t]`: returns the diagonal `d_1 | d_2 | ...`
/// as monic polynomials (including degree-0 units for regular matrices).
pub fn smith_normal_form(fq: &Fq, mat: &[Vec<Poly>]) -> Result<Vec<Poly>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<Poly>> = mat.to_vec();
    let mut k = 0;
    while k < rows && k < cols {
        // locate a nonzero entry of minimal degree in the trailing block
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(d) = poly_deg(&m[i][j]) {
                    if pivot.map_or(true, |(_, _, pd)| d < pd) {
                        pivot = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        // clear row and column k by Euclidean reduction; any nonzero
        // residue has strictly smaller degree, so re-pivoting terminates
        let mut dirty = false;
        for i in k + 1..rows {
            if m[i][k].is_empty() {
                continue;
            }
            let (quot, _) = poly_divrem(fq, &m[i][k], &m[k][k])?;
            for j in k..cols {
                let sub = poly_mul(fq, &quot, &m[k][j]);
                m[i][j] = poly_sub(fq, &m[i][j], &sub);
            }
            if !m[i][k].is_empty() {
                dirty = true;
            }
        }
        for j in k + 1..cols {
            if m[k][j].is_empty() {
                continue;
            }
            let (quot, _) = poly_divrem(fq, &m[k][j], &m[k][k])?;
            for i in k..rows {
                let sub = poly_mul(fq, &quot, &m[i][k]);
                m[i][j] = poly_sub(fq, &m[i][j], &sub);
            }
            if !m[k][j].is_empty() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // the pivot must divide every entry of the trailing block; fold an
        // offending row into row k and redo the elimination otherwise
        let mut fixed = true;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                let (_, rem) = poly_divrem(fq, &m[i][j], &m[k][k])?;
                if !rem.is_empty() {
                    for jj in k..cols {
                        m[k][jj] = poly_add(fq, &m[k][jj], &m[i][jj]);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let mut diag = Vec::new();
    for i in 0..rows.min(cols) {
        if !m[i][i].is_empty() {
            diag.push(poly_monic(fq, &m[i][i])?);
        }
    }
    Ok(diag)
}

/// Factor a monic polynomial into monic irreducibles with multiplicities,
/// by trial division in increasing degree.
pub fn factor_poly(fq: &Fq, poly: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut rest = poly_monic(fq, poly)?;
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1usize;
    loop {
        let deg_rest = poly_deg(&rest).unwrap_or(0);
        if deg_rest == 0 {
            break;
        }
        if d * 2 > deg_rest {
            // no divisor of degree < d exists, so what is left is irreducible
            out.push((rest.clone(), 1));
            break;
        }
        for cand in irreducibles(fq, d as u32)? {
            let mut mult = 0;
            loop {
                let (quot, rem) = poly_divrem(fq, &rest, &cand)?;
                if rem.is_empty() {
                    rest = quot;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        d += 1;
    }
    Ok(out)
}
