//! Structural invariants of the field, sequence, polynomial and cyclotomic
//! layers, checked exhaustively on small fields and by proptest elsewhere.

use proptest::prelude::*;

use slce::arith::{gcd, odd_prime_powers};
use slce::cyclo::{ideal_factors, reduce_mod_ideal, CyclotomicRing};
use slce::gf2poly::{
    berlekamp_massey_periodic, characteristic_poly, factor, is_irreducible, linear_complexity,
};
use slce::report::sequence_gcd;
use slce::slce::{autocorrelation_profile, generate, generate_for_alpha_power, representation_counts};
use slce::{FieldCtx, Gf2Poly};

#[test]
fn dlog_round_trip_and_frobenius() {
    for (p, m, q) in odd_prime_powers(10_000) {
        let ctx = FieldCtx::build(p, m).unwrap();
        assert!(ctx.frobenius_check(), "{p}^{m}");
        for t in 0..q - 1 {
            assert_eq!(ctx.dlog(ctx.power(t as i64)).unwrap(), t);
        }
        assert!(ctx.dlog(ctx.zero()).is_err());
    }
}

#[test]
fn trace_table_agrees_with_trace() {
    for (p, m) in [(3u64, 5u32), (5, 3), (7, 2), (11, 2), (3, 7)] {
        let ctx = FieldCtx::build(p, m).unwrap();
        let table = ctx.trace_by_exponent();
        for (t, &tr) in table.iter().enumerate() {
            assert_eq!(ctx.trace(ctx.power(t as i64)), tr);
        }
        // The trace is onto GF(p) with fibres of size p^{m-1}.
        let mut hist = vec![0u64; p as usize];
        for x in ctx.elements() {
            hist[ctx.trace(x) as usize] += 1;
        }
        assert!(hist.iter().all(|&n| n == ctx.q() / p));
    }
}

#[test]
fn representation_counts_follow_the_discriminant() {
    // x(1 - x) = γ has 2, 1 or 0 roots as 1 - 4γ is a nonzero square, zero,
    // or a non-square.
    for (p, m, _) in odd_prime_powers(500) {
        let ctx = FieldCtx::build(p, m).unwrap();
        let counts = representation_counts(&ctx);
        for g in ctx.elements().skip(1) {
            let disc = ctx.sub(ctx.one(), ctx.mul(ctx.from_int(4), g));
            let want = if disc.is_zero() {
                1
            } else if ctx.dlog(disc).unwrap() % 2 == 0 {
                2
            } else {
                0
            };
            assert_eq!(counts[g.packed() as usize], want, "{p}^{m}");
        }
    }
}

#[test]
fn autocorrelation_is_symmetric() {
    for (p, m, q) in odd_prime_powers(600) {
        let c = autocorrelation_profile(&generate(&FieldCtx::build(p, m).unwrap()));
        let v = c.len();
        assert_eq!(c[0], (q - 1) as i64);
        for tau in 1..v {
            assert_eq!(c[tau], c[v - tau], "{p}^{m}, tau = {tau}");
        }
    }
}

#[test]
fn connection_polynomial_is_the_characteristic_polynomial() {
    for (p, m, _) in odd_prime_powers(2000) {
        let seq = generate(&FieldCtx::build(p, m).unwrap());
        let (l, conn) = berlekamp_massey_periodic(&seq, 2 * seq.period());
        let c = characteristic_poly(&seq).unwrap();
        assert_eq!(conn, c, "{p}^{m}");
        assert_eq!(l, linear_complexity(&seq).unwrap());
    }
}

#[test]
fn gcd_degree_does_not_depend_on_alpha() {
    for (p, m, q) in odd_prime_powers(800) {
        let seq = generate(&FieldCtx::build(p, m).unwrap());
        let d = sequence_gcd(&seq).unwrap().degree();
        let v = q - 1;
        for j in (1..v).filter(|&j| gcd(j, v) == 1).take(6) {
            let dj = sequence_gcd(&generate_for_alpha_power(&seq, j)).unwrap().degree();
            assert_eq!(dj, d, "{p}^{m}, j = {j}");
        }
    }
}

#[test]
fn zeta_powers_stay_distinct_mod_each_ideal() {
    for k in (3..100u64).step_by(2) {
        let ring = CyclotomicRing::new(k).unwrap();
        for ideal in ideal_factors(k).unwrap() {
            let mut images: Vec<Gf2Poly> = (0..k as i64)
                .map(|i| reduce_mod_ideal(&ring.zeta_pow(i), &ideal).unwrap())
                .collect();
            images.sort_by(|a, b| a.canonical_cmp(b));
            images.dedup();
            assert_eq!(images.len() as u64, k, "k = {k}, {}", ideal.g);
        }
    }
}

fn poly() -> impl Strategy<Value = Gf2Poly> {
    prop::collection::vec(0u8..2, 1..200).prop_map(|bits| Gf2Poly::from_bits(&bits))
}

proptest! {
    #[test]
    fn div_rem_reconstructs(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(a.div_exact(&g).gcd(&b.div_exact(&g)).unwrap().is_one());
    }

    #[test]
    fn factorization_reconstructs(a in prop::collection::vec(0u8..2, 2..120)) {
        let f = Gf2Poly::from_bits(&a);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let list = factor(&f).unwrap();
        prop_assert_eq!(list.product(), f);
        for (g, _) in &list.factors {
            prop_assert!(is_irreducible(g));
        }
    }

    #[test]
    fn trace_is_additive(x in 0u32..2187, y in 0u32..2187, c in 0i64..3) {
        let ctx = FieldCtx::build(3, 7).unwrap();
        let (x, y) = (ctx.power(x as i64), ctx.power(y as i64));
        let lhs = ctx.trace(ctx.add(x, ctx.mul(ctx.from_int(c), y)));
        let rhs = (ctx.trace(x) + c as u32 * ctx.trace(y)) % 3;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_a_ring_map(
        k in prop::sample::select(vec![7u64, 15, 21, 23, 31, 45]),
        a in prop::collection::vec(-50i128..50, 45),
        b in prop::collection::vec(-50i128..50, 45),
    ) {
        let ring = CyclotomicRing::new(k).unwrap();
        let a = ring.reduce(a[..k as usize].to_vec());
        let b = ring.reduce(b[..k as usize].to_vec());
        for ideal in ideal_factors(k).unwrap() {
            let ra = reduce_mod_ideal(&a, &ideal).unwrap();
            let rb = reduce_mod_ideal(&b, &ideal).unwrap();
            let prod = reduce_mod_ideal(&a.mul(&b).unwrap(), &ideal).unwrap();
            let sum = reduce_mod_ideal(&a.add(&b).unwrap(), &ideal).unwrap();
            prop_assert_eq!(prod, ra.mul_mod(&rb, &ideal.g));
            prop_assert_eq!(sum, ra.add(&rb));
        }
    }
}
