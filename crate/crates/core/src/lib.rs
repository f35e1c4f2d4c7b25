//! Sidelnikov–Lempel–Cohn–Eastman (SLCE) binary sequences over GF(p^m).
//!
//! The crate builds the sequences, computes `gcd(S₂(x), x^{q-1}+1)` and the
//! linear complexity directly over GF(2), and predicts divisibility of `S₂(x)`
//! by cyclotomic factors from exact Jacobi sums in `Z[ζ_k]` and from the
//! closed-form pure and index-2 evaluations. The two routes are cross-checked
//! by [`report`].

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod gaussnum;
pub mod gf2poly;
pub mod predict;
pub mod report;
pub mod slce;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElt};
pub use gf2poly::Gf2Poly;
