//! Exact complex character tables of the finite general linear groups
//! `GL_n(F_q)`, computed through the Hall-Littlewood / Schur vertex operator
//! calculus on colored symmetric functions.
//!
//! The pipeline, bottom to top:
//! - [`combinatorics`]: partitions, colored partitions, and the q-series
//!   statistics (`z_lambda`, `n(lambda)`, hooks, Gaussian binomials).
//! - [`cyclotomic`]: exact arithmetic in `Q(zeta_m)` with big-rational
//!   coordinates in the power basis.
//! - [`orbits`]: Frobenius orbits of `F_{q^d}^x` and its character group as
//!   q-cyclotomic cosets, their root-of-unity pairing, and conversion to and
//!   from monic irreducible polynomials.
//! - [`symfunc`]: the power-sum polynomial algebra over a pluggable
//!   coefficient field, with vertex operators as component extractors and
//!   Green polynomials as transition coefficients.
//! - [`hall`]: Hall algebra structure constants through the symmetric
//!   function isomorphism.
//! - [`chartable`]: class data, character degrees, and the exact value
//!   matrix, assembled as matrix coefficients of vertex operators.
//! - [`oracle`]: brute-force matrix-group ground truth at tiny scale.

pub mod chartable;
pub mod coeff;
pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod hall;
pub mod oracle;
pub mod orbits;
pub mod poly;
pub mod symfunc;

pub use error::{Error, Result};
