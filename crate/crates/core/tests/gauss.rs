//! Jacobi sums as ratios of Gauss sums, for every pair of characters on
//! small fields, and the purity classification.

use std::f64::consts::PI;

use num_complex::Complex64;
use slce::arith::odd_prime_powers;
use slce::gaussnum::{has_pure_exponent, is_numerically_pure, GaussTables, TOLERANCE};
use slce::report::valid_orders;
use slce::FieldCtx;

/// `J(ε_a, ε_b) = Σ_{x ≠ 0, 1} ε_a(x) ε_b(1 - x)` summed directly.
fn jacobi_direct(ctx: &FieldCtx, roots: &[Complex64], a: u64, b: u64) -> Complex64 {
    let n = ctx.order();
    let mut acc = Complex64::new(0.0, 0.0);
    for t in 1..n {
        let x = ctx.power(t as i64);
        let u = ctx.dlog(ctx.sub(ctx.one(), x)).unwrap();
        acc += roots[((a * t + b * u) % n) as usize];
    }
    acc
}

#[test]
fn jacobi_is_a_ratio_of_gauss_sums() {
    let mut pairs = 0;
    for (p, m, q) in odd_prime_powers(343) {
        let ctx = FieldCtx::build(p, m).unwrap();
        let n = q - 1;
        let g = GaussTables::new(&ctx).gauss_sums(n).unwrap();
        let roots: Vec<Complex64> =
            (0..n).map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)).collect();
        for a in 1..n {
            for b in 1..n {
                if (a + b) % n == 0 {
                    continue;
                }
                pairs += 1;
                let direct = jacobi_direct(&ctx, &roots, a, b);
                let via = g[a as usize] * g[b as usize] / g[((a + b) % n) as usize];
                let err = (direct - via).norm() / direct.norm().max(1.0);
                assert!(err < TOLERANCE, "q = {q}, ({a}, {b}): {direct} vs {via}");
                assert!((direct.norm() - (q as f64).sqrt()).abs() < 1e-6 * q as f64);
            }
        }
    }
    assert!(pairs > 1_000_000);
}

#[test]
fn purity_matches_the_power_criterion() {
    for (p, m, q) in odd_prime_powers(1500) {
        let ctx = FieldCtx::build(p, m).unwrap();
        let tables = GaussTables::new(&ctx);
        for k in valid_orders(q) {
            let g = tables.gauss_sum(k, 1).unwrap();
            assert_eq!(
                is_numerically_pure(g, q, k, p),
                has_pure_exponent(p, k),
                "q = {q}, k = {k}"
            );
        }
    }
}
