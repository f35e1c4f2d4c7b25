//! GF(p^m) with a canonical modulus, a canonical primitive element and a
//! full discrete-logarithm table.
//!
//! Elements are stored by their coordinates in the power basis of the
//! modulus, packed into one integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! Canonical choices (modulus, then `α`) are the first candidates in
//! lexicographic order of the coordinate tuple `(c_0, c_1, ...)`.

use serde::Serialize;

use crate::arith::{checked_pow_bounded, factorize, is_prime};
use crate::error::{Error, Result};

/// Default bound on `q = p^m`.
pub const DEFAULT_MAX_ORDER: u64 = 2_000_000;

/// A field element by packed power-basis coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElt(u32);

impl FieldElt {
    pub const ZERO: FieldElt = FieldElt(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn packed(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients constant term first (length m + 1).
    modulus: Vec<u32>,
    alpha: FieldElt,
    /// `exp[t]` = α^t for t in 0..q-1.
    exp: Vec<FieldElt>,
    /// `log[x]` for packed x != 0; `log[0]` is unused.
    log: Vec<u32>,
}

/// Parameters echoed into every report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FieldEcho {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    /// Modulus coefficients, constant term first.
    pub modulus: Vec<u32>,
    /// Coordinates of α, constant term first.
    pub alpha: Vec<u32>,
}

impl FieldCtx {
    /// Builds GF(p^m) under the default size bound.
    pub fn build(p: u64, m: u32) -> Result<Self> {
        Self::build_bounded(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn build_bounded(p: u64, m: u32, bound: u64) -> Result<Self> {
        validate_params(p, m)?;
        let q = checked_pow_bounded(p, m, bound.min(u32::MAX as u64))
            .ok_or(Error::FieldTooLarge { p, m, bound })?;
        let p = p as u32;
        let q = q as u32;

        let modulus = canonical_modulus(p, m);
        let arith = CoordArith { p, m, modulus: &modulus };
        let alpha = canonical_primitive(&arith, q);

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = arith.one();
        let alpha_c = arith.unpack(alpha);
        for t in 0..q - 1 {
            let packed = arith.pack(&cur);
            debug_assert_eq!(log[packed as usize], u32::MAX);
            log[packed as usize] = t;
            exp.push(FieldElt(packed));
            cur = arith.mul(&cur, &alpha_c);
        }
        debug_assert_eq!(arith.pack(&cur), 1);

        Ok(FieldCtx {
            p,
            m,
            q,
            modulus,
            alpha: FieldElt(alpha),
            exp,
            log,
        })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u64 {
        self.q as u64 - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElt {
        self.alpha
    }

    pub fn echo(&self) -> FieldEcho {
        FieldEcho {
            p: self.p(),
            m: self.m,
            q: self.q(),
            modulus: self.modulus.clone(),
            alpha: self.coeffs(self.alpha),
        }
    }

    pub fn zero(&self) -> FieldElt {
        FieldElt::ZERO
    }

    pub fn one(&self) -> FieldElt {
        FieldElt(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElt {
        FieldElt(n.rem_euclid(self.p as i64) as u32)
    }

    /// Builds an element from coordinates (constant term first); missing
    /// trailing coordinates are zero, values are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElt {
        assert!(coeffs.len() <= self.m as usize, "too many coordinates");
        let mut packed = 0u32;
        for &c in coeffs.iter().rev() {
            packed = packed * self.p + c % self.p;
        }
        FieldElt(packed)
    }

    pub fn coeffs(&self, x: FieldElt) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = x.0;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// All elements, in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElt> {
        (0..self.q).map(FieldElt)
    }

    pub fn add(&self, x: FieldElt, y: FieldElt) -> FieldElt {
        self.combine(x, y, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, x: FieldElt, y: FieldElt) -> FieldElt {
        self.combine(x, y, |a, b, p| (a + p - b) % p)
    }

    pub fn neg(&self, x: FieldElt) -> FieldElt {
        self.sub(FieldElt::ZERO, x)
    }

    fn combine(&self, x: FieldElt, y: FieldElt, op: impl Fn(u32, u32, u32) -> u32) -> FieldElt {
        if self.m == 1 {
            return FieldElt(op(x.0, y.0, self.p));
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += op(a % self.p, b % self.p, self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElt(out)
    }

    pub fn mul(&self, x: FieldElt, y: FieldElt) -> FieldElt {
        if x.is_zero() || y.is_zero() {
            return FieldElt::ZERO;
        }
        let t = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % self.order();
        self.exp[t as usize]
    }

    pub fn inv(&self, x: FieldElt) -> Result<FieldElt> {
        let t = self.dlog(x)?;
        Ok(self.power(-(t as i64)))
    }

    /// `x^e` for a non-negative exponent (0^0 = 1).
    pub fn pow(&self, x: FieldElt, e: u64) -> FieldElt {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return FieldElt::ZERO;
        }
        let t = (self.log[x.0 as usize] as u128 * e as u128) % self.order() as u128;
        self.exp[t as usize]
    }

    /// α^t, with t reduced mod q - 1.
    pub fn power(&self, t: i64) -> FieldElt {
        self.exp[t.rem_euclid(self.order() as i64) as usize]
    }

    /// The exponent `t` in `[0, q-2]` with α^t = x.
    pub fn dlog(&self, x: FieldElt) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroLog);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// Absolute trace `x + x^p + ... + x^{p^{m-1}}`, as a residue mod p.
    pub fn trace(&self, x: FieldElt) -> u32 {
        let mut acc = FieldElt::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace must lie in the prime field");
        acc.0
    }

    /// `trace(α^t)` for every t in `0..q-1`, using linearity of the trace
    /// over the basis images.
    pub fn trace_by_exponent(&self) -> Vec<u32> {
        let basis: Vec<u32> = (0..self.m)
            .map(|i| {
                let mut c = vec![0u32; self.m as usize];
                c[i as usize] = 1;
                self.trace(self.from_coeffs(&c))
            })
            .collect();
        self.exp
            .iter()
            .map(|&x| {
                let mut v = x.0;
                let mut acc = 0u64;
                for &b in &basis {
                    acc += (v % self.p) as u64 * b as u64;
                    v /= self.p;
                }
                (acc % self.p as u64) as u32
            })
            .collect()
    }

    /// `dlog(1 - α^t)` for t in `1..q-1` (index 0 is unused and set to 0).
    pub fn one_minus_power_logs(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.order() as usize];
        for t in 1..self.order() as usize {
            let y = self.sub(self.one(), self.exp[t]);
            out[t] = self.log[y.0 as usize];
        }
        out
    }

    /// Checks that the modulus divides `x^{p^m} - x` over GF(p).
    pub fn frobenius_check(&self) -> bool {
        let arith = CoordArith { p: self.p, m: self.m, modulus: &self.modulus };
        let mut y = arith.x_elem();
        for _ in 0..self.m {
            y = arith.pow(&y, self.p as u64);
        }
        y == arith.x_elem()
    }
}

fn validate_params(p: u64, m: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

/// Coordinate-level arithmetic used before the tables exist.
struct CoordArith<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl CoordArith<'_> {
    fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.m as usize];
        v[0] = 1;
        v
    }

    fn x_elem(&self) -> Vec<u32> {
        let mut v = vec![0; self.m as usize];
        if self.m == 1 {
            v[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            v[1] = 1;
        }
        v
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn unpack(&self, mut v: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.m as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| c as u32).collect()
    }

    fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

/// Coordinate tuple number `n` in lexicographic order with `c_0` most
/// significant.
fn lex_tuple(n: u64, p: u32, len: u32) -> Vec<u32> {
    let mut out = vec![0u32; len as usize];
    let mut v = n;
    for i in (0..len as usize).rev() {
        out[i] = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for n in 0..count {
        let mut f = lex_tuple(n, p, m);
        f.push(1);
        if poly_p::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn canonical_primitive(arith: &CoordArith<'_>, q: u32) -> u32 {
    let order = q as u64 - 1;
    let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
    let one = arith.one();
    for n in 1..q as u64 {
        let cand = lex_tuple(n, arith.p, arith.m);
        if cand.iter().all(|&c| c == 0) {
            continue;
        }
        if primes.iter().all(|&r| arith.pow(&cand, order / r) != one) {
            return arith.pack(&cand);
        }
    }
    unreachable!("the multiplicative group is cyclic")
}

/// Dense polynomials over GF(p) (constant term first), used only for the
/// irreducibility search.
mod poly_p {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        crate::arith::pow_mod(a, p - 2, p)
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            for j in 0..=df {
                let idx = top - df + j;
                r[idx] = (r[idx] + p - c * f[j] % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, f, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: `f` of degree m is irreducible iff gcd(x^{p^i} - x, f) = 1
    /// for every i <= m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = rem(&[0, 1], &f, p);
        let mut y = x.clone();
        for _ in 1..=m / 2 {
            // y <- y^p mod f
            let mut acc = vec![1u64];
            let mut base = y.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, &f, p);
                }
                base = mul_mod(&base, &base, &f, p);
                e >>= 1;
            }
            y = acc;
            let mut diff = y.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(ctx: &FieldCtx, x: FieldElt) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != ctx.one() {
            y = ctx.mul(y, x);
            n += 1;
        }
        n
    }

    #[test]
    fn prime_field_five() {
        let ctx = FieldCtx::build(5, 1).unwrap();
        assert_eq!(ctx.q(), 5);
        assert_eq!(ctx.coeffs(ctx.alpha()), vec![2]);
        // exhaustive order oracle over {2, 3, 4}
        let orders: Vec<u64> = (2..5).map(|c| order_of(&ctx, ctx.from_int(c))).collect();
        assert_eq!(orders, vec![4, 4, 2]);
        assert_eq!(ctx.power(0), ctx.one());
        assert_eq!(ctx.power(1), ctx.from_int(2));
        assert_eq!(ctx.power(6), ctx.from_int(4));
        assert_eq!(ctx.dlog(ctx.from_int(1)).unwrap(), 0);
        assert_eq!(ctx.dlog(ctx.from_int(2)).unwrap(), 1);
        assert_eq!(ctx.dlog(ctx.from_int(4)).unwrap(), 2);
        assert_eq!(ctx.trace(ctx.from_int(3)), 3);
    }

    #[test]
    fn prime_field_three() {
        let ctx = FieldCtx::build(3, 1).unwrap();
        assert_eq!(ctx.coeffs(ctx.alpha()), vec![2]);
    }

    #[test]
    fn nine_elements() {
        let ctx = FieldCtx::build(3, 2).unwrap();
        assert_eq!(ctx.q(), 9);
        assert_eq!(order_of(&ctx, ctx.alpha()), 8);
        let primitive = ctx
            .elements()
            .skip(1)
            .filter(|&x| order_of(&ctx, x) == 8)
            .count();
        assert_eq!(primitive, 4);
        assert_eq!(ctx.trace(ctx.zero()), 0);
        assert_eq!(ctx.trace(ctx.one()), 2);
        assert!(ctx.frobenius_check());
    }

    #[test]
    fn canonical_modulus_is_lexicographic() {
        // Over GF(3), x^2 + 1 = (0, 1) precedes x^2 + x + 2 = (2, 1).
        let ctx = FieldCtx::build(3, 2).unwrap();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        // x^2 + 1 splits mod 5; x^2 + x + 1 has non-residue discriminant.
        let ctx = FieldCtx::build(5, 2).unwrap();
        assert_eq!(ctx.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(FieldCtx::build(2, 1).unwrap_err(), Error::EvenPrime(2));
        assert_eq!(FieldCtx::build(9, 1).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(
            FieldCtx::build(3, 20).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
        let ctx = FieldCtx::build(7, 1).unwrap();
        assert_eq!(ctx.dlog(ctx.zero()).unwrap_err(), Error::ZeroLog);
    }

    #[test]
    fn trace_table_matches_definition() {
        for (p, m) in [(3, 3), (5, 2), (7, 2), (3, 4)] {
            let ctx = FieldCtx::build(p, m).unwrap();
            let table = ctx.trace_by_exponent();
            for t in 0..ctx.order() {
                assert_eq!(table[t as usize], ctx.trace(ctx.power(t as i64)));
            }
        }
    }
}
