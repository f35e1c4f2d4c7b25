//! The SLCE sequence, its support set `D`, the sets `Y` and `Z`, and
//! autocorrelation.

use crate::field::{FieldCtx, FieldElt};

/// Exponents `t` with `α^t ∈ D`, and the elements of `D` in the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub exponents: Vec<u64>,
    pub elements: Vec<FieldElt>,
}

/// One period of a binary sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSeq {
    pub bits: Vec<u8>,
}

impl BitSeq {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BitSeq { bits }
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// The period as a string of `0`/`1` characters.
    pub fn to_text(&self) -> String {
        self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }
}

/// `D = { α^{2i+1} - 1 : 0 <= i <= q-2 } \ {0}`.
pub fn support_set(ctx: &FieldCtx) -> SupportSet {
    let v = ctx.order();
    let mut hit = vec![false; v as usize];
    for i in 0..v {
        let x = ctx.sub(ctx.power((2 * i + 1) as i64), ctx.one());
        if let Ok(t) = ctx.dlog(x) {
            hit[t as usize] = true;
        }
    }
    let exponents: Vec<u64> = (0..v).filter(|&t| hit[t as usize]).collect();
    let elements = exponents.iter().map(|&t| ctx.power(t as i64)).collect();
    SupportSet { exponents, elements }
}

/// `s_t = 1` iff `α^t ∈ D`, for `0 <= t < q-1`.
pub fn generate(ctx: &FieldCtx) -> BitSeq {
    let d = support_set(ctx);
    let mut bits = vec![0u8; ctx.order() as usize];
    for t in d.exponents {
        bits[t as usize] = 1;
    }
    BitSeq::new(bits)
}

/// The sequence for the primitive element `α^j` (`gcd(j, q-1) = 1`) in
/// place of `α`. Odd powers of `α^j` are exactly the odd powers of `α`, so
/// `D` is unchanged and the new sequence is the decimation `t ↦ s_{jt}`.
pub fn generate_for_alpha_power(seq: &BitSeq, j: u64) -> BitSeq {
    let v = seq.period() as u64;
    BitSeq::new((0..v).map(|t| seq.bits[(j * t % v) as usize]).collect())
}

/// `C(τ) = Σ_i (-1)^{s_i + s_{i+τ}}`, indices mod the period.
pub fn autocorrelation(seq: &BitSeq, tau: usize) -> i64 {
    let v = seq.period();
    let b = &seq.bits;
    (0..v)
        .map(|i| if b[i] == b[(i + tau) % v] { 1 } else { -1 })
        .sum()
}

pub fn autocorrelation_profile(seq: &BitSeq) -> Vec<i64> {
    (0..seq.period()).map(|tau| autocorrelation(seq, tau)).collect()
}

/// `Y = { x(1 - x) : x ∈ F_q^* } \ {0}`, sorted by packed value.
pub fn set_y(ctx: &FieldCtx) -> Vec<FieldElt> {
    let mut seen = vec![false; ctx.q() as usize];
    for x in ctx.elements().skip(1) {
        let y = ctx.mul(x, ctx.sub(ctx.one(), x));
        if !y.is_zero() {
            seen[y.packed() as usize] = true;
        }
    }
    ctx.elements().filter(|y| seen[y.packed() as usize]).collect()
}

/// Complement of `Y` in `F_q^*`.
pub fn set_z(ctx: &FieldCtx) -> Vec<FieldElt> {
    let y = set_y(ctx);
    let mut in_y = vec![false; ctx.q() as usize];
    for e in &y {
        in_y[e.packed() as usize] = true;
    }
    ctx.elements()
        .skip(1)
        .filter(|e| !in_y[e.packed() as usize])
        .collect()
}

/// Whether `Z = (-4)^{-1} D`.
pub fn lce_shift_check(ctx: &FieldCtx) -> bool {
    let minus_four_inv = ctx
        .inv(ctx.from_int(-4))
        .expect("4 is a unit in odd characteristic");
    let mut shifted: Vec<FieldElt> = support_set(ctx)
        .elements
        .into_iter()
        .map(|d| ctx.mul(minus_four_inv, d))
        .collect();
    shifted.sort();
    shifted == set_z(ctx)
}

/// For each nonzero `γ` (indexed by packed value), the number of
/// `x ∈ F_q^*` with `x(1 - x) = γ`.
pub fn representation_counts(ctx: &FieldCtx) -> Vec<u32> {
    let mut counts = vec![0u32; ctx.q() as usize];
    for x in ctx.elements().skip(1) {
        let y = ctx.mul(x, ctx.sub(ctx.one(), x));
        counts[y.packed() as usize] += 1;
    }
    counts[0] = 0;
    counts
}
