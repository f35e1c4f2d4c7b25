//! Dense bit-packed polynomials over GF(2).

mod cyclotomic;
mod factor;
mod lfsr;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub use cyclotomic::{
    cyclotomic_cosets, cyclotomic_factors, cyclotomic_poly_mod2, minimal_polys_of_order,
    pair_factors_with_cosets,
};
pub use factor::{factor, is_irreducible, FactorList};
pub use lfsr::{
    berlekamp_massey, berlekamp_massey_periodic, characteristic_poly, linear_complexity,
    lfsr_generates, poly_from_seq,
};

/// A polynomial over GF(2); bit `i` of the packed words is the coefficient
/// of `x^i`. No trailing zero words are stored, so the zero polynomial has
/// no words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    pub fn monomial(n: usize) -> Self {
        let mut p = Self::zero();
        p.flip(n);
        p
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.flip(0);
        p
    }

    /// `1 + x + ... + x^{n-1}`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_exponents(0..n)
    }

    /// From coefficient bits packed into an integer (bit i = coeff of x^i).
    pub fn from_u64(bits: u64) -> Self {
        let mut p = Gf2Poly { words: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut p = Gf2Poly { words };
        p.normalize();
        p
    }

    pub(crate) fn from_words(words: Vec<u64>) -> Self {
        let mut p = Gf2Poly { words };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn flip(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % 64);
        self.normalize();
    }

    /// Exponents with nonzero coefficient, increasing.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coefficient bits as an integer, when the degree is below 64.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// `self ^= other · x^shift`, without normalizing.
    fn xor_shifted_raw(&mut self, other: &Gf2Poly, shift: usize) {
        xor_shifted_words(&mut self.words, &other.words, shift);
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Gf2Poly::from_words(words)
    }

    pub fn shl(&self, n: usize) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        out.xor_shifted_raw(self, n);
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let (a, b) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Gf2Poly::zero();
        for e in a.exponents() {
            out.xor_shifted_raw(b, e);
        }
        out.normalize();
        out
    }

    /// Square via bit spreading (characteristic-2 Frobenius).
    pub fn square(&self) -> Gf2Poly {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread(w as u32));
            words.push(spread((w >> 32) as u32));
        }
        Gf2Poly::from_words(words)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        let Some(da) = r.degree() else {
            return (Gf2Poly::zero(), r);
        };
        if da < db {
            return (Gf2Poly::zero(), r);
        }
        let mut qwords = vec![0u64; (da - db) / 64 + 1];
        for i in (db..=da).rev() {
            if (r.words[i / 64] >> (i % 64)) & 1 == 1 {
                let shift = i - db;
                r.xor_shifted_raw(divisor, shift);
                qwords[shift / 64] |= 1 << (shift % 64);
            }
        }
        r.normalize();
        (Gf2Poly::from_words(qwords), r)
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        self.div_rem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Gf2Poly) -> Gf2Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Gf2Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Greatest common divisor (monic is automatic over GF(2)).
    pub fn gcd(&self, other: &Gf2Poly) -> Result<Gf2Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub fn derivative(&self) -> Gf2Poly {
        // odd-degree terms shift down by one; even-degree terms vanish
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        let n = self.words.len();
        let mut words = vec![0u64; n];
        for i in 0..n {
            let w = self.words[i] & ODD;
            words[i] |= w >> 1;
            if i > 0 {
                words[i - 1] |= w << 63;
            }
        }
        Gf2Poly::from_words(words)
    }

    /// Square root of a polynomial whose odd coefficients all vanish.
    pub fn sqrt(&self) -> Option<Gf2Poly> {
        if !self.derivative().is_zero() {
            return None;
        }
        let exps = self.exponents();
        Some(Gf2Poly::from_exponents(exps.into_iter().map(|e| e / 2)))
    }

    pub fn mul_mod(&self, other: &Gf2Poly, modulus: &Gf2Poly) -> Gf2Poly {
        self.mul(other).rem(modulus)
    }

    pub fn square_mod(&self, modulus: &Gf2Poly) -> Gf2Poly {
        self.square().rem(modulus)
    }

    /// Evaluates `self(x^j)` reduced modulo `x^k + 1`.
    pub fn compose_power_mod_xk1(&self, j: usize, k: usize) -> Gf2Poly {
        Gf2Poly::from_exponents(self.exponents().into_iter().map(|e| (e * j) % k))
    }

    /// Ordering used for printed factorizations: by degree, then by the
    /// coefficient bits read as an integer.
    pub fn canonical_cmp(&self, other: &Gf2Poly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

fn xor_shifted_words(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let ws = shift / 64;
    let bs = shift % 64;
    let need = ws + src.len() + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[ws + i] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[ws + i] ^= w << bs;
            dst[ws + i + 1] ^= w >> (64 - bs);
        }
    }
}

/// Interleaves zero bits: bit i of `x` moves to bit 2i.
fn spread(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

impl fmt::Display for Gf2Poly {
    /// Highest degree first, e.g. `x^3+x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl std::str::FromStr for Gf2Poly {
    type Err = String;

    /// Parses sums of `1`, `x` and `x^n` terms, e.g. `x^4+x+1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut p = Gf2Poly::zero();
        for term in s.split('+').map(str::trim) {
            let e = match term {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| format!("bad term `{t}`"))?,
            };
            p.flip(e);
        }
        Ok(p)
    }
}
