//! Report assembly for the command-line front end: sequences, gcds,
//! predictions and the prediction-versus-direct verification table.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{checked_pow_bounded, divisors, odd_prime_powers};
use crate::cyclo::{criterion_from_k, ideal_factors, IdealFactor, JacobiTables};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldEcho};
use crate::gf2poly::{factor, linear_complexity, poly_from_seq, Gf2Poly};
use crate::predict::{predict, Prediction, Regime, Target, Verdict};
use crate::slce::{autocorrelation_profile, generate, BitSeq};

/// Largest `q` for which `verify` computes `S₂` directly.
pub const DIRECT_BOUND: u64 = 20_000;

fn echo_text(f: &FieldEcho) -> String {
    format!(
        "p = {}, m = {}, q = {}, modulus = {:?}, alpha = {:?}",
        f.p, f.m, f.q, f.modulus, f.alpha
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct SeqReport {
    #[serde(flatten)]
    pub field: FieldEcho,
    pub period: usize,
    pub weight: usize,
    pub sequence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub autocorrelation: Option<Vec<i64>>,
}

pub fn seq_report(ctx: &FieldCtx, autocorr: bool) -> SeqReport {
    let seq = generate(ctx);
    SeqReport {
        field: ctx.echo(),
        period: seq.period(),
        weight: seq.weight(),
        sequence: seq.to_text(),
        autocorrelation: autocorr.then(|| autocorrelation_profile(&seq)),
    }
}

impl SeqReport {
    pub fn to_text(&self) -> String {
        format!(
            "# {}\n{}\n# period {}, weight {}\n",
            echo_text(&self.field),
            self.sequence,
            self.period,
            self.weight
        )
    }

    /// `tau,c_tau` rows, if the profile was computed.
    pub fn autocorr_csv(&self) -> Option<String> {
        let profile = self.autocorrelation.as_ref()?;
        let mut out = String::from("tau,c_tau\n");
        for (tau, c) in profile.iter().enumerate() {
            writeln!(out, "{tau},{c}").unwrap();
        }
        Some(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdReport {
    #[serde(flatten)]
    pub field: FieldEcho,
    pub period: usize,
    pub gcd_degree: usize,
    pub gcd: String,
    pub linear_complexity: usize,
}

/// `gcd(S₂(x), x^{q-1} + 1)` of the sequence.
pub fn sequence_gcd(seq: &BitSeq) -> Result<Gf2Poly> {
    Gf2Poly::x_pow_plus_one(seq.period()).gcd(&poly_from_seq(seq))
}

pub fn gcd_report(ctx: &FieldCtx) -> Result<GcdReport> {
    let seq = generate(ctx);
    let g = sequence_gcd(&seq)?;
    let gcd = if g.is_one() { "1".to_string() } else { factor(&g)?.to_string() };
    Ok(GcdReport {
        field: ctx.echo(),
        period: seq.period(),
        gcd_degree: g.degree().unwrap_or(0),
        gcd,
        linear_complexity: linear_complexity(&seq)?,
    })
}

impl GcdReport {
    pub fn to_text(&self) -> String {
        format!(
            "# {}\ngcd: {}\nlinear complexity: {} = {} - {}\n",
            echo_text(&self.field),
            self.gcd,
            self.linear_complexity,
            self.period,
            self.gcd_degree
        )
    }
}

pub fn prediction_text(pred: &Prediction) -> String {
    let target = match pred.target {
        Target::AllOnes => format!("1 + x + ... + x^{}", pred.k - 1),
        Target::EachFactor => format!("each I_beta with ord(beta) = {}", pred.k),
    };
    format!(
        "p = {}, m = {}, k = {}\nregime: {}\ntarget: {}\nverdict: {}\ntrace: {}\n",
        pred.p, pred.m, pred.k, pred.regime, target, pred.divides, pred.condition_trace
    )
}

/// Irreducible factors of `Φ_k mod 2`, computed once per `k`.
#[derive(Default)]
pub struct IdealCache {
    map: Mutex<HashMap<u64, Arc<Vec<IdealFactor>>>>,
}

impl IdealCache {
    pub fn get(&self, k: u64) -> Result<Arc<Vec<IdealFactor>>> {
        if let Some(v) = self.map.lock().unwrap().get(&k) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(ideal_factors(k)?);
        self.map.lock().unwrap().insert(k, Arc::clone(&v));
        Ok(v)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FactorRow {
    pub g: String,
    pub coset: Vec<u64>,
    /// `(K(χ) + 1)/2 ≡ 0` modulo the ideal of `g`.
    pub criterion: bool,
    /// `g | S₂(x)`.
    pub direct: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KRow {
    pub k: u64,
    pub regime: Option<Regime>,
    pub predicted: Option<Verdict>,
    /// `1 + x + ... + x^{k-1} | S₂(x)`.
    pub direct: Option<bool>,
    pub factors: Vec<FactorRow>,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldEcho>,
    pub gcd: Option<String>,
    pub linear_complexity: Option<usize>,
    pub rows: Vec<KRow>,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.field {
            Some(f) => writeln!(out, "# {}", echo_text(f)).unwrap(),
            None => writeln!(out, "# p = {}, m = {}, q = {}", self.p, self.m, self.q).unwrap(),
        }
        if let (Some(g), Some(l)) = (&self.gcd, self.linear_complexity) {
            writeln!(out, "gcd: {g}\nlinear complexity: {l}").unwrap();
        }
        for r in &self.rows {
            let regime = r.regime.map_or("-".to_string(), |x| x.to_string());
            let predicted = r.predicted.map_or("-".to_string(), |v| v.to_string());
            let direct = match (r.direct, &r.note) {
                (Some(d), _) => d.to_string(),
                (None, Some(n)) => n.clone(),
                (None, None) => "-".to_string(),
            };
            writeln!(
                out,
                "k = {}: regime {regime}, predicted {predicted}, direct {direct}, match {}",
                r.k,
                if r.matches { "yes" } else { "NO" }
            )
            .unwrap();
            for f in &r.factors {
                writeln!(
                    out,
                    "  {}: criterion {}, divides S2 {}",
                    f.g, f.criterion, f.direct
                )
                .unwrap();
            }
        }
        out
    }

    pub fn csv_rows(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            let regime = r.regime.map_or(String::new(), |x| x.to_string());
            let predicted = match r.predicted {
                Some(Verdict::Divides) => "true",
                Some(Verdict::NotDivides) => "false",
                Some(Verdict::Indeterminate) => "indeterminate",
                None => "",
            };
            let direct = r.direct.map_or(String::new(), |d| d.to_string());
            if r.factors.is_empty() {
                out.push(format!(
                    "{},{},{},{},{regime},{predicted},{direct},,,,{}",
                    self.q, self.p, self.m, r.k, r.matches
                ));
            }
            for f in &r.factors {
                out.push(format!(
                    "{},{},{},{},{regime},{predicted},{direct},{},{},{},{}",
                    self.q, self.p, self.m, r.k, f.g, f.criterion, f.direct, r.matches
                ));
            }
        }
        out
    }
}

pub const CSV_HEADER: &str = "q,p,m,k,regime,predicted,direct,factor,criterion,factor_divides,match";

/// Odd `k >= 3` dividing `q - 1`.
pub fn valid_orders(q: u64) -> Vec<u64> {
    divisors(q - 1).into_iter().filter(|&k| k % 2 == 1 && k >= 3).collect()
}

fn closed_form(p: u64, m: u32, k: u64) -> Result<(Option<Prediction>, Option<String>)> {
    match predict(p, m, k) {
        Ok(pred) => Ok((Some(pred), None)),
        Err(Error::NoClosedForm(why)) => Ok((None, Some(format!("no closed form: {why}")))),
        Err(e) => Err(e),
    }
}

/// Criterion, direct divisibility and closed form for each `k`.
pub fn verify_field(ctx: &FieldCtx, ks: &[u64], cache: &IdealCache) -> Result<VerificationReport> {
    let seq = generate(ctx);
    let g = sequence_gcd(&seq)?;
    let jac = JacobiTables::new(ctx);
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let kval = jac.k_value(k)?;
        let mut factors = Vec::new();
        for ideal in cache.get(k)?.iter() {
            factors.push(FactorRow {
                g: ideal.g.to_string(),
                coset: ideal.coset.clone(),
                criterion: criterion_from_k(&kval, ideal)?,
                direct: ideal.g.divides(&g),
            });
        }
        let direct_all = Gf2Poly::all_ones(k as usize).divides(&g);
        let (pred, note) = closed_form(ctx.p(), ctx.m(), k)?;
        let mut matches = factors.iter().all(|f| f.criterion == f.direct);
        if let Some(pred) = &pred {
            if let Some(v) = pred.divides.as_bool() {
                matches &= match pred.target {
                    Target::AllOnes => v == direct_all,
                    Target::EachFactor => factors.iter().all(|f| f.direct == v),
                };
            }
        }
        rows.push(KRow {
            k,
            regime: pred.as_ref().map(|x| x.regime),
            predicted: pred.as_ref().map(|x| x.divides),
            direct: Some(direct_all),
            factors,
            matches,
            note,
        });
    }
    let gcd = if g.is_one() { "1".to_string() } else { factor(&g)?.to_string() };
    Ok(VerificationReport {
        p: ctx.p(),
        m: ctx.m(),
        q: ctx.q(),
        field: Some(ctx.echo()),
        gcd: Some(gcd),
        linear_complexity: Some(linear_complexity(&seq)?),
        rows,
    })
}

/// Closed forms only; the direct side is marked as skipped.
pub fn verify_predict_only(p: u64, m: u32, ks: &[u64]) -> Result<VerificationReport> {
    let q = p.checked_pow(m).ok_or(Error::Overflow("p^m"))?;
    let mut rows = Vec::new();
    for &k in ks {
        let (pred, note) = closed_form(p, m, k)?;
        let skipped = format!("skipped: q = {p}^{m} infeasible");
        rows.push(KRow {
            k,
            regime: pred.as_ref().map(|x| x.regime),
            predicted: pred.as_ref().map(|x| x.divides),
            direct: None,
            factors: Vec::new(),
            matches: true,
            note: Some(match note {
                Some(n) => format!("{n}; {skipped}"),
                None => skipped,
            }),
        });
    }
    Ok(VerificationReport { p, m, q, field: None, gcd: None, linear_complexity: None, rows })
}

/// `verify` for one field: direct when `q <= bound`, closed forms only with
/// `predict_only`. `k = None` means every valid order.
pub fn verify(
    p: u64,
    m: u32,
    k: Option<u64>,
    predict_only: bool,
    bound: u64,
) -> Result<VerificationReport> {
    let q = p.checked_pow(m).ok_or(Error::Overflow("p^m"))?;
    let ks = match k {
        Some(k) => {
            if k % 2 == 0 {
                return Err(Error::EvenOrder(k));
            }
            if k < 3 {
                return Err(Error::OrderTooSmall(k));
            }
            if (q - 1) % k != 0 {
                return Err(Error::OrderNotDividing { k, q_minus_1: q - 1 });
            }
            vec![k]
        }
        None => valid_orders(q),
    };
    if predict_only {
        return verify_predict_only(p, m, &ks);
    }
    if checked_pow_bounded(p, m, bound).is_none() {
        return Err(Error::DirectBoundExceeded { q: format!("{p}^{m}"), bound });
    }
    let ctx = FieldCtx::build_bounded(p, m, bound)?;
    verify_field(&ctx, &ks, &IdealCache::default())
}

/// Every odd prime power `q <= q_max`, in order of `q`.
pub fn grid(q_max: u64) -> Result<Vec<VerificationReport>> {
    let cache = IdealCache::default();
    odd_prime_powers(q_max)
        .into_par_iter()
        .map(|(p, m, q)| {
            let ctx = FieldCtx::build_bounded(p, m, q_max.max(q))?;
            verify_field(&ctx, &valid_orders(q), &cache)
        })
        .collect()
}
