//! Linear complexity of periodic binary sequences, by the gcd formula and by
//! Berlekamp–Massey.

use super::{xor_shifted_words, Gf2Poly};
use crate::error::{Error, Result};
use crate::slce::BitSeq;

/// `S(x) = s_0 + s_1 x + ... + s_{v-1} x^{v-1}`.
pub fn poly_from_seq(seq: &BitSeq) -> Gf2Poly {
    Gf2Poly::from_bits(&seq.bits)
}

/// `v - deg gcd(x^v + 1, S(x))`.
pub fn linear_complexity(seq: &BitSeq) -> Result<usize> {
    if seq.is_zero() {
        return Err(Error::ZeroSequence);
    }
    let v = seq.period();
    let g = Gf2Poly::x_pow_plus_one(v).gcd(&poly_from_seq(seq))?;
    Ok(v - g.degree().expect("gcd of nonzero polynomials is nonzero"))
}

/// `c(x) = (x^v + 1) / gcd(x^v + 1, S(x))`, the minimal connection
/// polynomial of the periodic sequence.
pub fn characteristic_poly(seq: &BitSeq) -> Result<Gf2Poly> {
    if seq.is_zero() {
        return Err(Error::ZeroSequence);
    }
    let f = Gf2Poly::x_pow_plus_one(seq.period());
    let g = f.gcd(&poly_from_seq(seq))?;
    Ok(f.div_exact(&g))
}

/// Berlekamp–Massey over GF(2) on a finite prefix. Returns the linear
/// complexity `L` and the connection polynomial `C(x) = 1 + c_1 x + ... +
/// c_L x^L` with `s_n = Σ c_i s_{n-i}` for `n >= L`.
pub fn berlekamp_massey(s: &[u8]) -> (usize, Gf2Poly) {
    let n = s.len();
    let words = n / 64 + 2;
    // rev[j] = s[n-1-j]; the window s_N, s_{N-1}, ... is a contiguous run of
    // rev starting at n-1-N.
    let mut rev = vec![0u64; words + 2];
    for (j, &b) in s.iter().rev().enumerate() {
        if b & 1 == 1 {
            rev[j / 64] |= 1 << (j % 64);
        }
    }
    let window = |pos: usize| -> u64 {
        let (w, b) = (pos / 64, pos % 64);
        if b == 0 {
            rev[w]
        } else {
            (rev[w] >> b) | (rev[w + 1] << (64 - b))
        }
    };

    let mut c = vec![0u64; words];
    c[0] = 1;
    let mut prev = c.clone();
    let mut l = 0usize;
    let mut shift = 1usize;
    for idx in 0..n {
        let off = n - 1 - idx;
        let mut acc = 0u64;
        let last = l / 64;
        for w in 0..=last {
            let mut cw = c[w];
            if w == last && l % 64 != 63 {
                cw &= (1u64 << (l % 64 + 1)) - 1;
            }
            acc ^= cw & window(off + 64 * w);
        }
        if acc.count_ones() % 2 == 0 {
            shift += 1;
            continue;
        }
        if 2 * l <= idx {
            let saved = c.clone();
            xor_shifted_words(&mut c, &prev, shift);
            l = idx + 1 - l;
            prev = saved;
            shift = 1;
        } else {
            xor_shifted_words(&mut c, &prev, shift);
            shift += 1;
        }
    }
    (l, Gf2Poly::from_words(c))
}

/// Berlekamp–Massey on `n_terms` consecutive terms of the periodic
/// extension of `seq`.
pub fn berlekamp_massey_periodic(seq: &BitSeq, n_terms: usize) -> (usize, Gf2Poly) {
    let v = seq.period();
    let terms: Vec<u8> = (0..n_terms).map(|i| seq.bits[i % v]).collect();
    berlekamp_massey(&terms)
}

/// Whether the register with connection polynomial `conn` and length `len`,
/// seeded with the first `len` terms, reproduces `n_terms` terms of the
/// periodic extension of `seq`.
pub fn lfsr_generates(conn: &Gf2Poly, len: usize, seq: &BitSeq, n_terms: usize) -> bool {
    let v = seq.period();
    let taps: Vec<usize> = conn.exponents().into_iter().filter(|&e| e > 0).collect();
    if taps.iter().any(|&e| e > len) || !conn.coeff(0) {
        return false;
    }
    let mut out: Vec<u8> = (0..len.min(n_terms)).map(|i| seq.bits[i % v]).collect();
    for n in len..n_terms {
        let bit = taps.iter().fold(0u8, |acc, &e| acc ^ out[n - e]);
        out.push(bit);
    }
    out.iter().enumerate().all(|(i, &b)| b == seq.bits[i % v])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BitSeq {
        BitSeq::new(s.bytes().map(|b| b - b'0').collect())
    }

    #[test]
    fn q5_linear_complexity() {
        let s = seq("1100");
        assert_eq!(poly_from_seq(&s), "x+1".parse().unwrap());
        assert_eq!(linear_complexity(&s).unwrap(), 3);
        let (l, c) = berlekamp_massey_periodic(&s, 8);
        assert_eq!(l, 3);
        assert_eq!(c, characteristic_poly(&s).unwrap());
        assert!(lfsr_generates(&c, l, &s, 8));
    }

    #[test]
    fn trivial_sequences() {
        assert_eq!(poly_from_seq(&seq("10")), Gf2Poly::one());
        assert!(poly_from_seq(&seq("0000")).is_zero());
        assert_eq!(linear_complexity(&seq("0000")).unwrap_err(), Error::ZeroSequence);
        let (l, c) = berlekamp_massey_periodic(&seq("11"), 4);
        assert_eq!(l, 1);
        assert_eq!(c, "x+1".parse().unwrap());
    }

    /// Textbook O(n^2) Berlekamp–Massey on unpacked bits.
    fn bm_reference(s: &[u8]) -> (usize, Vec<u8>) {
        let n = s.len();
        let mut c = vec![0u8; n + 1];
        let mut b = vec![0u8; n + 1];
        c[0] = 1;
        b[0] = 1;
        let (mut l, mut m) = (0usize, 1usize);
        for i in 0..n {
            let mut d = s[i];
            for j in 1..=l {
                d ^= c[j] & s[i - j];
            }
            if d == 0 {
                m += 1;
            } else if 2 * l <= i {
                let t = c.clone();
                for j in 0..=n - m {
                    c[j + m] ^= b[j];
                }
                l = i + 1 - l;
                b = t;
                m = 1;
            } else {
                for j in 0..=n - m {
                    c[j + m] ^= b[j];
                }
                m += 1;
            }
        }
        c.truncate(l + 1);
        (l, c)
    }

    #[test]
    fn packed_matches_reference() {
        let mut x = 0x1234_5678_9abc_def0u64;
        for len in [1usize, 5, 63, 64, 65, 130, 257, 400] {
            let s: Vec<u8> = (0..len)
                .map(|_| {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    (x & 1) as u8
                })
                .collect();
            let (l, c) = berlekamp_massey(&s);
            let (lr, cr) = bm_reference(&s);
            assert_eq!(l, lr, "len {len}");
            assert_eq!(c, Gf2Poly::from_bits(&cr), "len {len}");
        }
    }
}
