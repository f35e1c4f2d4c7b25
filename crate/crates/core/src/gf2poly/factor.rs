//! Complete factorization over GF(2): square-free decomposition,
//! distinct-degree splitting, then deterministic equal-degree splitting.

use std::fmt;

use super::Gf2Poly;
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Distinct irreducible factors with multiplicities, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub factors: Vec<(Gf2Poly, u32)>,
}

impl FactorList {
    fn from_unsorted(mut factors: Vec<(Gf2Poly, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        // merge repeats (can arise across square-free layers)
        let mut merged: Vec<(Gf2Poly, u32)> = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            match merged.last_mut() {
                Some((h, n)) if *h == g => *n += e,
                _ => merged.push((g, e)),
            }
        }
        FactorList { factors: merged }
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> Gf2Poly {
        let mut acc = Gf2Poly::one();
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, e)| g.degree().unwrap_or(0) * *e as usize)
            .sum()
    }
}

impl fmt::Display for FactorList {
    /// `(x+1)^4 (x^3+x+1)`; an empty list prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    format!("({g})")
                } else {
                    format!("({g})^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Factors a nonzero, non-constant polynomial into irreducibles.
pub fn factor(f: &Gf2Poly) -> Result<FactorList> {
    match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let mut out = Vec::new();
    for (sqfree, mult) in square_free(f) {
        for (part, d) in distinct_degree(&sqfree) {
            for g in equal_degree(&part, d) {
                out.push((g, mult));
            }
        }
    }
    Ok(FactorList::from_unsorted(out))
}

/// Square-free decomposition: pairs `(g_i, i)` with `f = Π g_i^i` and each
/// `g_i` square-free.
fn square_free(f: &Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        let root = f.sqrt().expect("zero derivative means a perfect square");
        for (g, e) in square_free(&root) {
            out.push((g, 2 * e));
        }
        return out;
    }
    let mut c = f.gcd(&d).expect("f is nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w is nonzero");
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt().expect("remaining cofactor is a square");
        for (g, e) in square_free(&root) {
            out.push((g, 2 * e));
        }
    }
    out
}

/// Splits a square-free polynomial into products of equal-degree
/// irreducibles: pairs `(product, degree)`.
fn distinct_degree(f: &Gf2Poly) -> Vec<(Gf2Poly, usize)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = Gf2Poly::x().rem(&g);
    let mut d = 1usize;
    while let Some(deg) = g.degree() {
        if deg < 2 * d {
            if deg > 0 {
                out.push((g.clone(), deg));
            }
            break;
        }
        h = h.square_mod(&g);
        let u = g.gcd(&h.add(&Gf2Poly::x())).expect("g is nonzero");
        if !u.is_one() {
            out.push((u.clone(), d));
            g = g.div_exact(&u);
            h = h.rem(&g);
        }
        d += 1;
    }
    out
}

/// `a + a^2 + ... + a^{2^{d-1}}` mod `f`.
fn trace_map(a: &Gf2Poly, d: usize, f: &Gf2Poly) -> Gf2Poly {
    let mut acc = a.clone();
    let mut t = a.clone();
    for _ in 1..d {
        acc = acc.square_mod(f);
        t = t.add(&acc);
    }
    t
}

/// Splits a product of distinct degree-`d` irreducibles. Trying `a = x^j`
/// for successive `j` is enough: the trace images of a basis span the whole
/// product of residue fields, so some basis element separates any two
/// factors.
fn equal_degree(f: &Gf2Poly, d: usize) -> Vec<Gf2Poly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    for j in 1..n {
        let a = Gf2Poly::monomial(j).rem(f);
        let t = trace_map(&a, d, f);
        let u = f.gcd(&t).expect("f is nonzero");
        let du = u.degree().expect("nonzero");
        if du > 0 && du < n {
            let mut out = equal_degree(&u, d);
            out.extend(equal_degree(&f.div_exact(&u), d));
            return out;
        }
    }
    unreachable!("basis trace images must separate distinct factors")
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Gf2Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = Gf2Poly::x();
    let x_pow_2_pow = |e: usize| {
        let mut h = x.rem(f);
        for _ in 0..e {
            h = h.square_mod(f);
        }
        h
    };
    if !x_pow_2_pow(n).add(&x).rem(f).is_zero() {
        return false;
    }
    factorize(n as u64).into_iter().all(|(r, _)| {
        let h = x_pow_2_pow(n / r as usize).add(&x);
        f.gcd(&h).expect("f is nonzero").is_one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn small_factorizations() {
        let fl = factor(&poly("x^2+x+1")).unwrap();
        assert_eq!(fl.factors, vec![(poly("x^2+x+1"), 1)]);

        let fl = factor(&Gf2Poly::x_pow_plus_one(7)).unwrap();
        assert_eq!(
            fl.factors,
            vec![(poly("x+1"), 1), (poly("x^3+x+1"), 1), (poly("x^3+x^2+1"), 1)]
        );
        assert_eq!(fl.to_string(), "(x+1) (x^3+x+1) (x^3+x^2+1)");

        let fl = factor(&Gf2Poly::x_pow_plus_one(4)).unwrap();
        assert_eq!(fl.to_string(), "(x+1)^4");

        assert_eq!(factor(&Gf2Poly::one()).unwrap_err(), Error::ConstantPolynomial);
        assert_eq!(factor(&Gf2Poly::zero()).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn x7_plus_1_by_exhaustive_cubic_division() {
        // Oracle: divide by every cubic and keep the ones with zero remainder.
        let f = Gf2Poly::x_pow_plus_one(7);
        let cubics: Vec<Gf2Poly> = (8u64..16)
            .map(Gf2Poly::from_u64)
            .filter(|c| c.divides(&f))
            .filter(|c| (2u64..4).all(|l| !Gf2Poly::from_u64(l).divides(c)))
            .collect();
        assert_eq!(cubics, vec![poly("x^3+x+1"), poly("x^3+x^2+1")]);
    }

    #[test]
    fn irreducibility_by_brute_force() {
        // Oracle: no factor of degree <= n/2.
        for bits in 2u64..1024 {
            let f = Gf2Poly::from_u64(bits);
            let n = f.degree().unwrap();
            let brute = (2u64..bits)
                .map(Gf2Poly::from_u64)
                .filter(|g| g.degree().unwrap() >= 1 && 2 * g.degree().unwrap() <= n)
                .all(|g| !g.divides(&f));
            assert_eq!(is_irreducible(&f), brute, "{f}");
        }
    }

    #[test]
    fn recombination_of_mixed_powers() {
        let a = poly("x^5+x^2+1");
        let b = poly("x^4+x+1");
        let c = poly("x+1");
        let f = a.square().square().mul(&b).mul(&b).mul(&b).mul(&c).mul(&Gf2Poly::x());
        let fl = factor(&f).unwrap();
        assert_eq!(fl.product(), f);
        assert!(fl.factors.iter().all(|(g, _)| is_irreducible(g)));
        assert_eq!(fl.to_string(), "(x) (x+1) (x^4+x+1)^3 (x^5+x^2+1)^4");
    }

    #[test]
    fn recombination_many_inputs() {
        for seed in 1u64..400 {
            let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut f = Gf2Poly::one();
            for _ in 0..4 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                f = f.mul(&Gf2Poly::from_u64((s & 0x3FF) | 2));
            }
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let fl = factor(&f).unwrap();
            assert_eq!(fl.product(), f);
            assert!(fl.factors.iter().all(|(g, _)| is_irreducible(g)));
        }
    }
}
