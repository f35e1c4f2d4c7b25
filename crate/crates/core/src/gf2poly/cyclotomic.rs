//! 2-cyclotomic cosets and the factorization of cyclotomic polynomials over
//! GF(2).

use std::collections::HashMap;

use super::Gf2Poly;
use crate::arith::{divisors, gcd, mult_order};
use crate::error::{Error, Result};

fn check_odd(k: u64) -> Result<()> {
    if k % 2 == 0 {
        return Err(Error::EvenOrder(k));
    }
    Ok(())
}

/// Orbits of `Z/kZ` under multiplication by 2, ordered by least element;
/// each orbit is listed as `j, 2j, 4j, ...`.
pub fn cyclotomic_cosets(k: u64) -> Result<Vec<Vec<u64>>> {
    check_odd(k)?;
    let mut seen = vec![false; k as usize];
    let mut out = Vec::new();
    for j in 0..k {
        if seen[j as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = j;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = 2 * x % k;
        }
        out.push(coset);
    }
    Ok(out)
}

/// `Φ_k mod 2`, by exact division of `x^k + 1` by `Φ_d` for the proper
/// divisors `d` of `k`.
pub fn cyclotomic_poly_mod2(k: u64) -> Result<Gf2Poly> {
    check_odd(k)?;
    let mut memo = HashMap::new();
    Ok(phi_mod2_memo(k, &mut memo))
}

fn phi_mod2_memo(k: u64, memo: &mut HashMap<u64, Gf2Poly>) -> Gf2Poly {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut f = Gf2Poly::x_pow_plus_one(k as usize);
    for d in divisors(k) {
        if d < k {
            let phi_d = phi_mod2_memo(d, memo);
            f = f.div_exact(&phi_d);
        }
    }
    memo.insert(k, f.clone());
    f
}

/// The irreducible factors of `Φ_k mod 2` (each of degree `ord_k(2)`), in
/// canonical order.
///
/// Splitting uses the coset sums `Σ_{j∈C} x^j`, which span the
/// Berlekamp subalgebra of `x^k + 1`; for any two distinct factors one of
/// them takes different values, so a gcd against it separates the pair.
pub fn cyclotomic_factors(k: u64) -> Result<Vec<Gf2Poly>> {
    check_odd(k)?;
    let phi = cyclotomic_poly_mod2(k)?;
    if k == 1 {
        return Ok(vec![phi]);
    }
    let f = mult_order(2, k) as usize;
    let mut done: Vec<Gf2Poly> = Vec::new();
    let mut pending = vec![phi];
    for coset in cyclotomic_cosets(k)? {
        if pending.is_empty() {
            break;
        }
        if coset == [0] {
            continue;
        }
        let h = Gf2Poly::from_exponents(coset.iter().map(|&j| j as usize));
        let mut next = Vec::new();
        for g in pending {
            let u = g.gcd(&h.rem(&g)).expect("g is nonzero");
            let du = u.degree().expect("nonzero");
            if du > 0 && du < g.degree().expect("nonzero") {
                let w = g.div_exact(&u);
                next.push(u);
                next.push(w);
            } else {
                next.push(g);
            }
        }
        pending = Vec::new();
        for g in next {
            if g.degree() == Some(f) {
                done.push(g);
            } else {
                pending.push(g);
            }
        }
    }
    assert!(pending.is_empty(), "coset sums failed to split Φ_{k}");
    done.sort_by(|a, b| a.canonical_cmp(b));
    Ok(done)
}

/// Minimal polynomials over GF(2) of the elements of order exactly `k`.
pub fn minimal_polys_of_order(k: u64) -> Result<Vec<Gf2Poly>> {
    check_odd(k)?;
    if k < 3 {
        return Err(Error::OrderTooSmall(k));
    }
    cyclotomic_factors(k)
}

/// Pairs each factor of `Φ_k mod 2` with its exponent coset relative to the
/// reference root `β₀ = x mod factors[0]`: the coset of `g` is the set of `j`
/// with `g(β₀^j) = 0`.
pub fn pair_factors_with_cosets(k: u64, factors: &[Gf2Poly]) -> Result<Vec<Vec<u64>>> {
    check_odd(k)?;
    let cosets: Vec<Vec<u64>> = cyclotomic_cosets(k)?
        .into_iter()
        .filter(|c| gcd(c[0], k) == 1)
        .collect();
    let reference = &factors[0];
    Ok(factors
        .iter()
        .map(|g| {
            cosets
                .iter()
                .find(|c| {
                    g.compose_power_mod_xk1(c[0] as usize, k as usize)
                        .rem(reference)
                        .is_zero()
                })
                .cloned()
                .expect("every factor of Φ_k has a root among the powers of β₀")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    fn poly(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_cosets(5).unwrap(), vec![vec![0], vec![1, 2, 4, 3]]);
        assert_eq!(
            cyclotomic_cosets(7).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]
        );
        assert_eq!(cyclotomic_cosets(3).unwrap(), vec![vec![0], vec![1, 2]]);
        assert_eq!(cyclotomic_cosets(4).unwrap_err(), Error::EvenOrder(4));
    }

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(minimal_polys_of_order(5).unwrap(), vec![poly("x^4+x^3+x^2+x+1")]);
        assert_eq!(
            minimal_polys_of_order(7).unwrap(),
            vec![poly("x^3+x+1"), poly("x^3+x^2+1")]
        );
        assert_eq!(minimal_polys_of_order(3).unwrap(), vec![poly("x^2+x+1")]);
    }

    #[test]
    fn coset_count_and_sizes() {
        for k in (3u64..200).step_by(2) {
            let f = mult_order(2, k);
            let cos = cyclotomic_cosets(k).unwrap();
            let units: Vec<&Vec<u64>> = cos.iter().filter(|c| gcd(c[0], k) == 1).collect();
            assert_eq!(units.len() as u64, euler_phi(k) / f);
            assert!(units.iter().all(|c| c.len() as u64 == f));
            let facs = cyclotomic_factors(k).unwrap();
            assert_eq!(facs.len() as u64, euler_phi(k) / f);
            assert!(facs.iter().all(|g| g.degree() == Some(f as usize)));
        }
    }

    #[test]
    fn all_cosets_multiply_to_all_ones() {
        for k in (3u64..120).step_by(2) {
            let mut prod = Gf2Poly::one();
            for d in divisors(k).into_iter().filter(|&d| d > 1) {
                for g in minimal_polys_of_order(d).unwrap() {
                    prod = prod.mul(&g);
                }
            }
            assert_eq!(prod, Gf2Poly::all_ones(k as usize), "k = {k}");
        }
    }

    #[test]
    fn pairing_matches_minimal_polynomials() {
        // For k = 7 with β₀ a root of x^3+x+1, β₀^3 is a root of x^3+x^2+1.
        let facs = cyclotomic_factors(7).unwrap();
        let cos = pair_factors_with_cosets(7, &facs).unwrap();
        assert_eq!(cos, vec![vec![1, 2, 4], vec![3, 6, 5]]);
        for k in [15u64, 21, 31, 45, 73, 85, 127] {
            let facs = cyclotomic_factors(k).unwrap();
            let cos = pair_factors_with_cosets(k, &facs).unwrap();
            let mut reps: Vec<u64> = cos.iter().map(|c| *c.iter().min().unwrap()).collect();
            reps.sort();
            reps.dedup();
            assert_eq!(reps.len(), facs.len(), "k = {k}: cosets must be distinct");
        }
    }
}
