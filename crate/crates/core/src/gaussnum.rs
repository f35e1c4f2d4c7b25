//! Floating-point Gauss sums `G(ε) = Σ ε(x) e^{2πi tr(x)/p}`, used to
//! cross-check the exact Jacobi sums and the purity classification.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{mult_order, pow_mod};
use crate::cyclo::{validate_order, JacobiTables};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Relative tolerance for all numeric comparisons.
pub const TOLERANCE: f64 = 1e-6;

/// Additive-character values indexed by exponent: `ψ(α^t)`.
pub struct GaussTables {
    q_minus_1: u64,
    psi: Vec<Complex64>,
}

impl GaussTables {
    pub fn new(ctx: &FieldCtx) -> Self {
        let p = ctx.p() as f64;
        let roots: Vec<Complex64> = (0..ctx.p())
            .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / p))
            .collect();
        let psi = ctx.trace_by_exponent().iter().map(|&t| roots[t as usize]).collect();
        GaussTables { q_minus_1: ctx.order(), psi }
    }

    /// `G(ε)` for `ε(α^t) = e^{2πi jt/n}`; `ε(0) = 0`.
    pub fn gauss_sum(&self, n: u64, j: u64) -> Result<Complex64> {
        if n == 0 || self.q_minus_1 % n != 0 || j == 0 || j >= n {
            return Err(Error::BadCharacter { n, j });
        }
        let chars: Vec<Complex64> = (0..n)
            .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64))
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut e = 0u64;
        for psi in &self.psi {
            acc += chars[e as usize] * psi;
            e = (e + j) % n;
        }
        Ok(acc)
    }

    /// `G(ε_j)` for every `j` in `0..n`, sharing one table of `n`-th roots.
    /// Entry 0 is the trivial character's sum, `-1`.
    pub fn gauss_sums(&self, n: u64) -> Result<Vec<Complex64>> {
        if n == 0 || self.q_minus_1 % n != 0 {
            return Err(Error::BadCharacter { n, j: 0 });
        }
        let chars: Vec<Complex64> = (0..n)
            .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64))
            .collect();
        let psi = &self.psi;
        Ok((0..n)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut e = 0u64;
                for x in psi {
                    acc += chars[e as usize] * x;
                    e += j;
                    if e >= n {
                        e -= n;
                    }
                }
                acc
            })
            .collect())
    }
}

pub fn gauss_sum(ctx: &FieldCtx, n: u64, j: u64) -> Result<Complex64> {
    GaussTables::new(ctx).gauss_sum(n, j)
}

/// The quadratic Gauss sum in closed form: `(-1)^{m-1} p^{m/2}` when
/// `p ≡ 1 (mod 4)` and `(-1)^{m-1} i^m p^{m/2}` when `p ≡ 3 (mod 4)`.
pub fn quadratic_gauss_closed_form(p: u64, m: u32) -> Complex64 {
    let size = (p as f64).powf(m as f64 / 2.0);
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let unit = if p % 4 == 1 { Complex64::new(1.0, 0.0) } else { Complex64::i().powu(m) };
    unit * sign * size
}

/// Whether some power of `p` is `-1` modulo `n`.
pub fn has_pure_exponent(p: u64, n: u64) -> bool {
    let ord = mult_order(p % n, n);
    (1..=ord).any(|x| pow_mod(p, x, n) == n - 1)
}

/// Numerically, whether `G / √q` is a root of unity. All roots of unity in
/// the field generated by `G` have order dividing `4np`.
pub fn is_numerically_pure(g: Complex64, q: u64, n: u64, p: u64) -> bool {
    let unit = g / (q as f64).sqrt();
    let mut z = Complex64::new(1.0, 0.0);
    let mut base = unit;
    let mut e = 4 * n * p;
    while e > 0 {
        if e & 1 == 1 {
            z *= base;
        }
        base *= base;
        e >>= 1;
    }
    (z - 1.0).norm() < TOLERANCE
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityReport {
    pub q: u64,
    pub k: u64,
    /// `G(χ) G(ρ) / G(χρ)`.
    pub via_gauss: [f64; 2],
    /// Exact `K(χ)` embedded at `ζ_k = e^{2πi/k}`.
    pub exact: [f64; 2],
    pub rel_err: f64,
    pub identity_holds: bool,
    pub numerically_pure: bool,
    pub pure_by_criterion: bool,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.identity_holds && self.numerically_pure == self.pure_by_criterion
    }
}

/// Compares the Gauss-sum route for `K(χ)` with the exact Jacobi sum, and
/// the numeric purity of `G(χ)` with the `p^x ≡ -1 (mod k)` criterion.
pub fn check_identities(ctx: &FieldCtx, k: u64) -> Result<IdentityReport> {
    check_identities_with(ctx, &GaussTables::new(ctx), &JacobiTables::new(ctx), k)
}

pub fn check_identities_with(
    ctx: &FieldCtx,
    gauss: &GaussTables,
    jacobi: &JacobiTables<'_>,
    k: u64,
) -> Result<IdentityReport> {
    validate_order(ctx, k)?;
    let g_chi = gauss.gauss_sum(k, 1)?;
    let g_rho = gauss.gauss_sum(2, 1)?;
    // χρ(α) = e^{2πi/k} · (-1) = e^{2πi (k+2)/(2k)}
    let g_chi_rho = gauss.gauss_sum(2 * k, (k + 2) % (2 * k))?;
    let via = g_chi * g_rho / g_chi_rho;
    let exact = jacobi.k_value(k)?.embed();
    let rel_err = (via - exact).norm() / exact.norm().max(1.0);
    Ok(IdentityReport {
        q: ctx.q(),
        k,
        via_gauss: [via.re, via.im],
        exact: [exact.re, exact.im],
        rel_err,
        identity_holds: rel_err < TOLERANCE,
        numerically_pure: is_numerically_pure(g_chi, ctx.q(), k, ctx.p()),
        pure_by_criterion: has_pure_exponent(ctx.p(), k),
    })
}
