//! Exact arithmetic in `Z[ζ_k]`, the Jacobi sums `K(χ) = χ(4) J(χ, χ)` and
//! `J(χ, ρ)`, and the divisibility criterion: `I_β | S₂` exactly when
//! `(K(χ) + 1)/2` lies in the prime ideal above 2 attached to `I_β`.
//!
//! Elements are stored in the power basis `1, ζ, ..., ζ^{φ(k)-1}` modulo the
//! k-th cyclotomic polynomial. That basis is integral, so an element is
//! divisible by 2 exactly when every coordinate is even.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldEcho};
use crate::gf2poly::{cyclotomic_factors, pair_factors_with_cosets, Gf2Poly};

/// `Φ_k` over the integers, constant term first, by exact division of
/// `x^k - 1` by `Φ_d` for every proper divisor `d` of `k`.
pub fn cyclotomic_poly(k: u64) -> Vec<i128> {
    let mut memo = HashMap::new();
    cyclotomic_poly_memo(k, &mut memo)
}

fn cyclotomic_poly_memo(k: u64, memo: &mut HashMap<u64, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut f = vec![0i128; k as usize + 1];
    f[0] = -1;
    f[k as usize] = 1;
    for d in divisors(k) {
        if d < k {
            let phi_d = cyclotomic_poly_memo(d, memo);
            f = div_exact_monic(&f, &phi_d);
        }
    }
    memo.insert(k, f.clone());
    f
}

fn div_exact_monic(a: &[i128], b: &[i128]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i];
        if c != 0 {
            q[i - db] = c;
            for j in 0..=db {
                r[i - db + j] -= c * b[j];
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

/// The ring `Z[ζ_k]` for odd `k`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicRing {
    k: u64,
    /// Monic `Φ_k`, constant term first.
    phi: Vec<i128>,
}

impl CyclotomicRing {
    pub fn new(k: u64) -> Result<Arc<Self>> {
        if k % 2 == 0 {
            return Err(Error::EvenOrder(k));
        }
        if k < 3 {
            return Err(Error::OrderTooSmall(k));
        }
        Ok(Arc::new(CyclotomicRing { k, phi: cyclotomic_poly(k) }))
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `φ(k)`, the rank of the power basis.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i128] {
        &self.phi
    }

    /// `Φ_k(1)`: `ℓ` when `k` is a power of the prime `ℓ`, else 1.
    pub fn phi_at_one(&self) -> i128 {
        self.phi.iter().sum()
    }

    /// Reduces an arbitrary integer polynomial in `ζ` modulo `Φ_k`.
    pub fn reduce(self: &Arc<Self>, mut poly: Vec<i128>) -> CycInt {
        let n = self.degree();
        for i in (n..poly.len()).rev() {
            let c = poly[i];
            if c != 0 {
                for j in 0..=n {
                    poly[i - n + j] -= c * self.phi[j];
                }
            }
        }
        poly.resize(n, 0);
        CycInt { ring: Arc::clone(self), coeffs: poly }
    }

    pub fn from_int(self: &Arc<Self>, n: i128) -> CycInt {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = n;
        CycInt { ring: Arc::clone(self), coeffs }
    }

    pub fn zero(self: &Arc<Self>) -> CycInt {
        self.from_int(0)
    }

    pub fn one(self: &Arc<Self>) -> CycInt {
        self.from_int(1)
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(self: &Arc<Self>, j: i64) -> CycInt {
        let e = j.rem_euclid(self.k as i64) as usize;
        let mut poly = vec![0i128; e + 1];
        poly[e] = 1;
        self.reduce(poly)
    }

    /// `Σ_e counts[e] ζ^e` for `e` in `0..k`.
    pub fn from_exponent_counts(self: &Arc<Self>, counts: &[i128]) -> CycInt {
        assert_eq!(counts.len(), self.k as usize);
        self.reduce(counts.to_vec())
    }
}

/// An element of `Z[ζ_k]` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<i128>,
}

impl CycInt {
    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn k(&self) -> u64 {
        self.ring.k
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    fn same_ring(&self, other: &CycInt) -> Result<()> {
        if self.ring.k != other.ring.k {
            return Err(Error::MismatchedOrder(self.ring.k, other.ring.k));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { ring: Arc::clone(&self.ring), coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { ring: Arc::clone(&self.ring), coeffs })
    }

    pub fn add_int(&self, n: i128) -> CycInt {
        let mut out = self.clone();
        out.coeffs[0] += n;
        out
    }

    pub fn scale(&self, n: i128) -> CycInt {
        CycInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![0i128; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(self.ring.reduce(prod))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        let k = self.ring.k as usize;
        let mut counts = vec![0i128; k];
        for (j, &c) in self.coeffs.iter().enumerate() {
            counts[(k - j) % k] += c;
        }
        self.ring.from_exponent_counts(&counts)
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i128> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Exact division by 2, if every coordinate is even.
    pub fn half(&self) -> Option<CycInt> {
        if self.coeffs.iter().any(|c| c % 2 != 0) {
            return None;
        }
        Some(CycInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c / 2).collect(),
        })
    }

    /// Exact division by `1 - ζ`, if the quotient is integral.
    ///
    /// Writing `(1 - x) u(x) = w(x) + c Φ_k(x)` and evaluating at `x = 1`
    /// forces `c = -w(1)/Φ_k(1)`; the rest is a triangular solve (synthetic
    /// division by `x - 1`).
    pub fn div_one_minus_zeta(&self) -> Option<CycInt> {
        let phi = &self.ring.phi;
        let w1: i128 = self.coeffs.iter().sum();
        let phi1 = self.ring.phi_at_one();
        if w1 % phi1 != 0 {
            return None;
        }
        let c = -w1 / phi1;
        let mut g: Vec<i128> = phi.iter().map(|&a| a * c).collect();
        for (gi, &wi) in g.iter_mut().zip(&self.coeffs) {
            *gi += wi;
        }
        // g = (x - 1) r, u = -r
        let n = g.len() - 1;
        let mut r = vec![0i128; n];
        let mut carry = 0i128;
        for i in (1..=n).rev() {
            carry += g[i];
            r[i - 1] = carry;
        }
        debug_assert_eq!(carry + g[0], 0);
        Some(CycInt {
            ring: Arc::clone(&self.ring),
            coeffs: r.into_iter().map(|x| -x).collect(),
        })
    }

    /// The embedding `ζ ↦ e^{2πi/k}`.
    pub fn embed(&self) -> Complex64 {
        let k = self.ring.k as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| Complex64::from_polar(c as f64, 2.0 * PI * j as f64 / k))
            .sum()
    }
}

/// The character of `F_q^*` of order `k` with `χ(α) = ζ_k`, so that
/// `χ(α^t) = ζ_k^{t mod k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    pub k: u64,
    pub q_minus_1: u64,
}

impl CharacterSpec {
    pub fn new(ctx: &FieldCtx, k: u64) -> Result<Self> {
        validate_order(ctx, k)?;
        Ok(CharacterSpec { k, q_minus_1: ctx.order() })
    }

    pub fn exponent(&self, t: u64) -> u64 {
        t % self.k
    }
}

pub fn validate_order(ctx: &FieldCtx, k: u64) -> Result<()> {
    if k % 2 == 0 {
        return Err(Error::EvenOrder(k));
    }
    if k < 3 {
        return Err(Error::OrderTooSmall(k));
    }
    if ctx.order() % k != 0 {
        return Err(Error::OrderNotDividing { k, q_minus_1: ctx.order() });
    }
    Ok(())
}

/// Precomputed logarithms shared by all Jacobi sums over one field.
pub struct JacobiTables<'a> {
    ctx: &'a FieldCtx,
    /// `dlog(1 - α^i)` for `i` in `1..q-1`.
    one_minus_logs: Vec<u32>,
    dlog4: u64,
}

impl<'a> JacobiTables<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        let dlog4 = ctx.dlog(ctx.from_int(4)).expect("4 is nonzero in odd characteristic");
        JacobiTables { ctx, one_minus_logs: ctx.one_minus_power_logs(), dlog4 }
    }

    /// `K(χ) = χ(4) Σ_{i=1}^{q-2} χ(α^i) χ(1 - α^i)`.
    pub fn k_value(&self, k: u64) -> Result<CycInt> {
        let chi = CharacterSpec::new(self.ctx, k)?;
        let ring = CyclotomicRing::new(k)?;
        let mut counts = vec![0i128; k as usize];
        for i in 1..self.ctx.order() {
            let t = self.dlog4 + i + self.one_minus_logs[i as usize] as u64;
            counts[chi.exponent(t) as usize] += 1;
        }
        Ok(ring.from_exponent_counts(&counts))
    }

    /// `J(χ, ρ) = Σ_{i=1}^{q-2} χ(α^i) ρ(1 - α^i)` with `ρ(α^t) = (-1)^t`.
    pub fn with_rho(&self, k: u64) -> Result<CycInt> {
        let chi = CharacterSpec::new(self.ctx, k)?;
        let ring = CyclotomicRing::new(k)?;
        let mut counts = vec![0i128; k as usize];
        for i in 1..self.ctx.order() {
            let sign = if self.one_minus_logs[i as usize] % 2 == 0 { 1 } else { -1 };
            counts[chi.exponent(i) as usize] += sign;
        }
        Ok(ring.from_exponent_counts(&counts))
    }
}

pub fn jacobi_k(ctx: &FieldCtx, k: u64) -> Result<CycInt> {
    JacobiTables::new(ctx).k_value(k)
}

pub fn jacobi_with_rho(ctx: &FieldCtx, k: u64) -> Result<CycInt> {
    JacobiTables::new(ctx).with_rho(k)
}

/// Whether `K + q` is divisible by `2(1 - ζ_k)` in `Z[ζ_k]`.
pub fn check_eq3(kval: &CycInt, q: u64) -> bool {
    kval.add_int(q as i128)
        .half()
        .and_then(|w| w.div_one_minus_zeta())
        .is_some()
}

/// A prime ideal above 2 in `Z[ζ_k]`, given by an irreducible factor `g` of
/// `Φ_k mod 2`; the residue field is `GF(2)[x]/(g)` with `ζ ↦ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFactor {
    pub k: u64,
    pub g: Gf2Poly,
    /// Exponents `j` with `g(β₀^j) = 0`, where `β₀ = x mod` the first factor.
    pub coset: Vec<u64>,
}

impl IdealFactor {
    /// Residue degree `f = ord_k(2)`.
    pub fn f(&self) -> usize {
        self.g.degree().expect("factor is nonzero")
    }
}

/// One ideal per irreducible factor of `Φ_k mod 2`, in canonical order.
pub fn ideal_factors(k: u64) -> Result<Vec<IdealFactor>> {
    if k % 2 == 0 {
        return Err(Error::EvenOrder(k));
    }
    if k < 3 {
        return Err(Error::OrderTooSmall(k));
    }
    let factors = cyclotomic_factors(k)?;
    let cosets = pair_factors_with_cosets(k, &factors)?;
    Ok(factors
        .into_iter()
        .zip(cosets)
        .map(|(g, coset)| IdealFactor { k, g, coset })
        .collect())
}

/// Image of `a` in the residue field `GF(2)[x]/(g)`.
pub fn reduce_mod_ideal(a: &CycInt, ideal: &IdealFactor) -> Result<Gf2Poly> {
    if a.k() != ideal.k {
        return Err(Error::MismatchedOrder(a.k(), ideal.k));
    }
    let bits: Vec<u8> = a.coeffs().iter().map(|c| (c & 1) as u8).collect();
    Ok(Gf2Poly::from_bits(&bits).rem(&ideal.g))
}

/// `(K + 1)/2`, failing loudly if some coordinate of `K + 1` is odd.
pub fn half_k_plus_one(kval: &CycInt) -> Result<CycInt> {
    let w = kval.add_int(1);
    match w.half() {
        Some(h) => Ok(h),
        None => {
            let index = w.coeffs().iter().position(|c| c % 2 != 0).unwrap_or(0);
            Err(Error::NonIntegralHalf { index })
        }
    }
}

/// The divisibility criterion for a precomputed `K(χ)`.
pub fn criterion_from_k(kval: &CycInt, ideal: &IdealFactor) -> Result<bool> {
    // k is odd, so χ(-1) = 1 and χ(D^c) = (K + 1)/2 needs no sign.
    let u = half_k_plus_one(kval)?;
    Ok(reduce_mod_ideal(&u, ideal)?.is_zero())
}

/// Whether `I_β = ideal.g` divides `S₂(x)`, decided from `K(χ)` alone.
pub fn criterion(ctx: &FieldCtx, k: u64, ideal: &IdealFactor) -> Result<bool> {
    criterion_from_k(&jacobi_k(ctx, k)?, ideal)
}

/// JSON form of `K(χ)` with the field echo.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KJson {
    #[serde(flatten)]
    pub field: FieldEcho,
    pub k: u64,
    pub basis: &'static str,
    pub coeffs: Vec<i64>,
}

impl KJson {
    pub fn new(ctx: &FieldCtx, kval: &CycInt) -> Result<Self> {
        let coeffs = kval
            .coeffs()
            .iter()
            .map(|&c| i64::try_from(c).map_err(|_| Error::Overflow("K(χ) coefficient")))
            .collect::<Result<Vec<_>>>()?;
        Ok(KJson { field: ctx.echo(), k: kval.k(), basis: "power", coeffs })
    }
}
