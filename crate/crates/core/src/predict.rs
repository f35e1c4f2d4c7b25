//! Closed-form divisibility predictions. The pure regime (some power of `p`
//! is `-1` mod `k`) uses the integer evaluation of `K(χ)`; the index-2
//! regime (`k = ℓ^r`, `ℓ ≡ 7 mod 8`, `[(Z/kZ)^* : ⟨p⟩] = 2`) uses Langevin's
//! evaluation with a class number and a representation `4p^h = a² + ℓb²`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, gcd, is_prime, isqrt, mult_order, pow_mod, prime_power};
use crate::error::{Error, Result};

/// `[(Z/kZ)^* : ⟨p⟩] = φ(k) / ord_k(p)`.
pub fn subgroup_index(k: u64, p: u64) -> Result<u64> {
    if gcd(p, k) != 1 {
        return Err(Error::NotCoprime { p, k });
    }
    if k <= 2 {
        return Ok(1);
    }
    Ok(euler_phi(k) / mult_order(p % k, k))
}

fn check_order(p: u64, m: u32, k: u64) -> Result<()> {
    if k % 2 == 0 {
        return Err(Error::EvenOrder(k));
    }
    if k < 3 {
        return Err(Error::OrderTooSmall(k));
    }
    if gcd(p, k) != 1 {
        return Err(Error::NotCoprime { p, k });
    }
    if pow_mod(p, m as u64, k) != 1 {
        let q_minus_1 = p.checked_pow(m).map_or(u64::MAX, |q| q - 1);
        return Err(Error::OrderNotDividing { k, q_minus_1 });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PureCaseParams {
    pub p: u64,
    pub m: u32,
    pub k: u64,
    /// Least `t > 0` with `p^t ≡ -1 (mod k)`.
    pub t: Option<u64>,
    /// `m / (2t)`, when integral.
    pub s: Option<u64>,
}

impl PureCaseParams {
    pub fn applicable(&self) -> bool {
        self.s.is_some()
    }
}

pub fn pure_case_params(p: u64, m: u32, k: u64) -> Result<PureCaseParams> {
    if gcd(p, k) != 1 {
        return Err(Error::NotCoprime { p, k });
    }
    let ord = mult_order(p % k, k);
    let t = (1..=ord).find(|&x| pow_mod(p, x, k) == k - 1);
    let s = t.and_then(|t| (m as u64 % (2 * t) == 0).then(|| m as u64 / (2 * t)));
    Ok(PureCaseParams { p, m, k, t, s })
}

/// The integer `K(χ)` in the pure regime:
/// `(-1)^{1 + (p^t+1)s/(2k)} p^{m/2}` for `p ≡ 1 (mod 4)`, with an extra
/// `(-1)^{m/2}` for `p ≡ 3 (mod 4)`.
pub fn pure_k_value(params: &PureCaseParams) -> Result<i128> {
    let (t, s) = match (params.t, params.s) {
        (Some(t), Some(s)) => (t, s),
        _ => return Err(Error::NotPure(format!("{params:?}"))),
    };
    let (p, m, k) = (params.p, params.m, params.k);
    // (p^t + 1)/(2k) mod 2 only matters, but p^t + 1 may be large.
    let pt1 = (p as u128)
        .checked_pow(t as u32)
        .ok_or(Error::Overflow("p^t"))?
        + 1;
    let quot = pt1 / (2 * k as u128);
    debug_assert_eq!(pt1 % (2 * k as u128), 0);
    let mut exponent = 1 + (quot % 2) as u64 * (s % 2);
    if p % 4 == 3 {
        exponent += m as u64 / 2;
    }
    let size = (p as i128)
        .checked_pow(m / 2)
        .ok_or(Error::Overflow("p^{m/2}"))?;
    Ok(if exponent % 2 == 0 { size } else { -size })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Divides,
    NotDivides,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Divides
        } else {
            Verdict::NotDivides
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Divides => Some(true),
            Verdict::NotDivides => Some(false),
            Verdict::Indeterminate => None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Divides => ser.serialize_bool(true),
            Verdict::NotDivides => ser.serialize_bool(false),
            Verdict::Indeterminate => ser.serialize_str("indeterminate"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Divides => "divides",
            Verdict::NotDivides => "does not divide",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Pure,
    Index2,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Pure => "pure",
            Regime::Index2 => "index2",
        })
    }
}

/// What a prediction is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `1 + x + ... + x^{k-1}` divides `S₂`.
    AllOnes,
    /// Every `I_β` with `ord β = k` divides `S₂` (same answer for each).
    EachFactor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Pure(PureCaseParams),
    Index2(Index2Params),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub p: u64,
    pub m: u32,
    pub k: u64,
    pub regime: Regime,
    pub target: Target,
    pub params: Params,
    pub divides: Verdict,
    pub condition_trace: String,
}

pub fn predict_pure(p: u64, m: u32, k: u64) -> Result<Prediction> {
    let params = pure_case_params(p, m, k)?;
    let (t, s) = match (params.t, params.s) {
        (Some(t), Some(s)) => (t, s),
        _ => return Err(Error::NotPure(format!("p = {p}, m = {m}, k = {k}"))),
    };
    let (divides, why) = if p % 4 == 1 {
        (s % 2 == 0, format!("p = {p} ≡ 1 (mod 4), t = {t}, s = {s}: s {} even", is(s % 2 == 0)))
    } else {
        let even = s % 2 == 0;
        let ts_odd = (t * s) % 2 == 1;
        (
            even || ts_odd,
            format!(
                "p = {p} ≡ 3 (mod 4), t = {t}, s = {s}: s {} even, ts {} odd",
                is(even),
                is(ts_odd)
            ),
        )
    };
    Ok(Prediction {
        p,
        m,
        k,
        regime: Regime::Pure,
        target: Target::AllOnes,
        params: Params::Pure(params),
        divides: Verdict::from_bool(divides),
        condition_trace: why,
    })
}

fn is(b: bool) -> &'static str {
    if b {
        "is"
    } else {
        "is not"
    }
}

/// Class number of `Q(√-ℓ)` for a prime `ℓ ≡ 3 (mod 4)`, `ℓ > 3`, by
/// counting reduced forms `(A, B, C)` of discriminant `-ℓ`.
pub fn class_number(l: u64) -> Result<u64> {
    if l <= 3 || l % 4 != 3 || !is_prime(l) {
        return Err(Error::BadDiscriminant(l));
    }
    let mut h = 0;
    let a_max = isqrt((l / 3) as u128) as i64 + 1;
    for a in 1..=a_max {
        for b in -a + 1..=a {
            let num = (b * b) as u64 + l;
            if num % (4 * a as u64) != 0 {
                continue;
            }
            let c = (num / (4 * a as u64)) as i64;
            if c < a || (b < 0 && c == a) {
                continue;
            }
            if gcd(gcd(a as u64, b.unsigned_abs()), c as u64) != 1 {
                continue;
            }
            h += 1;
        }
    }
    Ok(h)
}

/// Finds `a, |b|` with `4p^h = a² + ℓb²`, `a ≡ b (mod 2)`, `p ∤ ab` and
/// `a ≡ -2p^{(e+h)/2} (mod ℓ)`.
pub fn represent(p: u64, l: u64, h: u64, e: u64) -> Result<(i128, i128)> {
    let none = Error::NoRepresentation { p, l, h };
    if (e + h) % 2 != 0 {
        return Err(none);
    }
    let n = 4 * (p as u128).checked_pow(h as u32).ok_or(Error::Overflow("4p^h"))?;
    let target = (l - 2 * pow_mod(p, (e + h) / 2, l) % l) % l;
    let pp = p as u128;
    for a in 1..=isqrt(n) {
        let rest = n - a * a;
        if rest % l as u128 != 0 {
            continue;
        }
        let b2 = rest / l as u128;
        let b = isqrt(b2);
        if b * b != b2 || b == 0 || (a + b) % 2 != 0 || a % pp == 0 || b % pp == 0 {
            continue;
        }
        let a_mod = (a % l as u128) as u64;
        if a_mod == target {
            return Ok((a as i128, b as i128));
        }
        if (l - a_mod) % l == target {
            return Ok((-(a as i128), b as i128));
        }
    }
    Err(none)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Index2Params {
    pub l: u64,
    pub r: u32,
    pub k: u64,
    pub e: u64,
    pub s: u64,
    pub h: u64,
    pub a: i128,
    pub b_abs: i128,
}

pub fn index2_params(p: u64, m: u32, l: u64, r: u32) -> Result<Index2Params> {
    let bad = |why: &str| Error::NotIndexTwo(format!("p = {p}, m = {m}, l = {l}, r = {r}: {why}"));
    if r == 0 || !is_prime(l) || l <= 3 || l % 8 != 7 {
        return Err(bad("l must be a prime congruent to 7 mod 8"));
    }
    let k = l.checked_pow(r).ok_or(Error::Overflow("l^r"))?;
    if subgroup_index(k, p)? != 2 {
        return Err(bad("<p> does not have index 2"));
    }
    if pure_case_params(p, m, k)?.t.is_some() {
        return Err(bad("some power of p is -1 mod k"));
    }
    let e = euler_phi(k) / 2;
    if m as u64 % e != 0 {
        return Err(bad("m is not a multiple of phi(k)/2"));
    }
    let s = m as u64 / e;
    let h = class_number(l)?;
    let (a, b_abs) = represent(p, l, h, e)?;
    if a % 2 != 0 || b_abs % 2 != 0 {
        return Err(bad("a and b are not both even"));
    }
    Ok(Index2Params { l, r, k, e, s, h, a, b_abs })
}

/// Which sign exponent to use in the index-2 evaluation of `K(χ)`.
///
/// `Printed` is the exponent as usually stated: `s-1-(p-1)s/4` for
/// `p ≡ 1 (mod 4)` and `s-1-rs+(e+1)s/2` for `p ≡ 3 (mod 4)`. Recombining
/// `K = G(χ)G(ρ)/G(χρ)` from the quadratic, Langevin and order-`2k`
/// evaluations gives `s-1` and `s-1+rs+(e-1)s/2` instead: the `(p-1)s/4`
/// term comes from reading `√1` as `(-1)^{(p-1)/4}`, and the `p ≡ 3` case
/// divides by `i^s` where it should multiply. The two agree when
/// `p ≡ 1 (mod 8)` or when `s` is even. `Derived` is what the direct
/// computation confirms and is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignRule {
    Derived,
    Printed,
}

/// Parity exponent of the sign in front of `p^{(e-h)s/2}((a+b√-ℓ)/2)^s`.
fn k_sign_exponent(p: u64, params: &Index2Params, rule: SignRule) -> i128 {
    let (s, r, e) = (params.s as i128, params.r as i128, params.e as i128);
    match (p % 4 == 1, rule) {
        (true, SignRule::Derived) => s - 1,
        (true, SignRule::Printed) => s - 1 - (p as i128 - 1) * s / 4,
        (false, SignRule::Derived) => s - 1 + r * s + (e - 1) * s / 2,
        (false, SignRule::Printed) => s - 1 - r * s + (e + 1) * s / 2,
    }
}

/// `(-1)^E ((a+b)/2)^s mod 4`, where `E` is the sign exponent of `K(χ)`
/// plus, for `p ≡ 3 (mod 4)`, the parity of `(e-h)s/2` from
/// `p^{(e-h)s/2} ≡ (-1)^{(e-h)s/2} (mod 4)`. `I_β | S₂` exactly when this
/// is 3.
pub fn index2_residue(p: u64, params: &Index2Params, b: i128, rule: SignRule) -> Result<i128> {
    if params.h % 2 == 0 {
        return Err(Error::EvenClassNumber(params.h));
    }
    let (s, e, h) = (params.s as i128, params.e as i128, params.h as i128);
    let mut exponent = k_sign_exponent(p, params, rule);
    if p % 4 == 3 {
        exponent += (e - h) * s / 2;
    }
    let base = ((params.a + b) / 2).rem_euclid(4);
    let mut v = 1i128;
    for _ in 0..params.s {
        v = v * base % 4;
    }
    if exponent.rem_euclid(2) == 1 {
        v = (4 - v) % 4;
    }
    Ok(v)
}

pub fn predict_index2(p: u64, m: u32, l: u64, r: u32) -> Result<Prediction> {
    predict_index2_with(p, m, l, r, SignRule::Derived)
}

pub fn predict_index2_with(p: u64, m: u32, l: u64, r: u32, rule: SignRule) -> Result<Prediction> {
    let params = index2_params(p, m, l, r)?;
    let plus = index2_residue(p, &params, params.b_abs, rule)?;
    let minus = index2_residue(p, &params, -params.b_abs, rule)?;
    let divides = if plus == minus {
        Verdict::from_bool(plus == 3)
    } else {
        Verdict::Indeterminate
    };
    let trace = format!(
        "p = {p} ≡ {} (mod 4), l = {l}, r = {r}, e = {}, s = {}, h = {}, a = {}, b = ±{}, \
         sign exponent {}: residue mod 4 is {plus} for +b and {minus} for -b",
        p % 4,
        params.e,
        params.s,
        params.h,
        params.a,
        params.b_abs,
        k_sign_exponent(p, &params, rule),
    );
    Ok(Prediction {
        p,
        m,
        k: params.k,
        regime: Regime::Index2,
        target: if r == 1 { Target::AllOnes } else { Target::EachFactor },
        params: Params::Index2(params),
        divides,
        condition_trace: trace,
    })
}

/// `K(χ)` in the index-2 regime, `± p^{(e-h)s/2} ((a + b√-ℓ)/2)^s`, returned
/// as `(x, y, d)` meaning `(x + y√-ℓ)/d`.
pub fn index2_k_value(
    p: u64,
    params: &Index2Params,
    b: i128,
    rule: SignRule,
) -> Result<(i128, i128, i128)> {
    let s = params.s;
    let l = params.l as i128;
    let (mut x, mut y) = (1i128, 0i128);
    let ovf = || Error::Overflow("index-2 K value");
    for _ in 0..s {
        let nx = x
            .checked_mul(params.a)
            .and_then(|u| l.checked_mul(y)?.checked_mul(b).and_then(|v| u.checked_sub(v)))
            .ok_or_else(ovf)?;
        let ny = x
            .checked_mul(b)
            .and_then(|u| y.checked_mul(params.a).and_then(|v| u.checked_add(v)))
            .ok_or_else(ovf)?;
        x = nx;
        y = ny;
    }
    let (si, e, h) = (s as i128, params.e as i128, params.h as i128);
    if e < h || ((e - h) * si) % 2 != 0 {
        return Err(Error::NoClosedForm("(e - h)s/2 is not a natural number".into()));
    }
    let scale = (p as i128)
        .checked_pow(((e - h) * si / 2) as u32)
        .ok_or_else(ovf)?;
    let scale = if k_sign_exponent(p, params, rule).rem_euclid(2) == 1 { -scale } else { scale };
    Ok((
        x.checked_mul(scale).ok_or_else(ovf)?,
        y.checked_mul(scale).ok_or_else(ovf)?,
        1i128 << s,
    ))
}

/// Routes to the pure or index-2 predictor.
pub fn predict(p: u64, m: u32, k: u64) -> Result<Prediction> {
    check_order(p, m, k)?;
    let pure = pure_case_params(p, m, k)?;
    if pure.t.is_some() {
        return predict_pure(p, m, k);
    }
    if subgroup_index(k, p)? == 2 {
        if let Some((l, r)) = prime_power(k) {
            if l % 8 == 7 {
                return predict_index2(p, m, l, r);
            }
            return Err(Error::NoClosedForm(format!(
                "index 2 with l = {l} ≢ 7 (mod 8)"
            )));
        }
        return Err(Error::NoClosedForm(format!("index 2 with k = {k} not a prime power")));
    }
    Err(Error::NoClosedForm(format!(
        "k = {k}: no power of {p} is -1 and the index of <{p}> is {}",
        subgroup_index(k, p)?
    )))
}
