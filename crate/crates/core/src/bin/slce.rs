use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use slce::cyclo::{check_eq3, JacobiTables, KJson};
use slce::field::DEFAULT_MAX_ORDER;
use slce::gaussnum::{check_identities_with, GaussTables};
use slce::predict::predict;
use slce::report::{
    gcd_report, grid, prediction_text, seq_report, verify, CSV_HEADER, DIRECT_BOUND,
};
use slce::{FieldCtx, Result};

#[derive(Parser)]
#[command(name = "slce", version, about = "SLCE sequences, their linear complexity and Jacobi-sum divisibility tests")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Copy)]
struct Field {
    /// Odd prime p
    #[arg(short)]
    p: u64,
    /// Extension degree m
    #[arg(short, default_value_t = 1)]
    m: u32,
}

#[derive(Args, Clone, Copy)]
struct Output {
    #[arg(long)]
    json: bool,
    /// Accepted for compatibility; nothing here is random.
    #[arg(long)]
    seed_free: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print one period of the sequence
    Seq {
        #[command(flatten)]
        field: Field,
        /// Emit the autocorrelation profile as CSV (tau,c_tau)
        #[arg(long)]
        autocorr: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Factor gcd(S2(x), x^(q-1) + 1) and report the linear complexity
    Gcd {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form prediction for 1 + x + ... + x^(k-1) | S2(x)
    Predict {
        #[command(flatten)]
        field: Field,
        #[arg(short)]
        k: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Exact K(chi) with the Gauss-sum and congruence checks
    Jacobi {
        #[command(flatten)]
        field: Field,
        #[arg(short)]
        k: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Criterion, direct divisibility and prediction for one field
    Verify {
        #[command(flatten)]
        field: Field,
        /// Restrict to one order k (default: every odd k >= 3 dividing q - 1)
        #[arg(short)]
        k: Option<u64>,
        /// Skip the direct computation (needed above the bound)
        #[arg(long)]
        predict_only: bool,
        #[arg(long, default_value_t = DIRECT_BOUND)]
        bound: u64,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Verify every odd prime power q <= q_max
    Grid {
        #[arg(long, default_value_t = 3000)]
        q_max: u64,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

#[derive(Serialize)]
struct JacobiOut {
    #[serde(flatten)]
    k: KJson,
    eq3: bool,
    norm: Option<i64>,
    gauss: slce::gaussnum::IdentityReport,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::Seq { field, autocorr, out } => {
            let ctx = FieldCtx::build(field.p, field.m)?;
            let r = seq_report(&ctx, autocorr);
            if out.json {
                print!("{}", json(&r));
            } else if let Some(csv) = r.autocorr_csv() {
                print!("{csv}");
            } else {
                print!("{}", r.to_text());
            }
            Ok(true)
        }
        Command::Gcd { field, out } => {
            let ctx = FieldCtx::build(field.p, field.m)?;
            let r = gcd_report(&ctx)?;
            print!("{}", if out.json { json(&r) } else { r.to_text() });
            Ok(true)
        }
        Command::Predict { field, k, out } => {
            let pred = predict(field.p, field.m, k)?;
            print!("{}", if out.json { json(&pred) } else { prediction_text(&pred) });
            Ok(true)
        }
        Command::Jacobi { field, k, out } => {
            let ctx = FieldCtx::build(field.p, field.m)?;
            let jac = JacobiTables::new(&ctx);
            let kval = jac.k_value(k)?;
            let norm = kval.mul(&kval.conj())?.as_integer().and_then(|n| i64::try_from(n).ok());
            let gauss = check_identities_with(&ctx, &GaussTables::new(&ctx), &jac, k)?;
            let r = JacobiOut { k: KJson::new(&ctx, &kval)?, eq3: check_eq3(&kval, ctx.q()), norm, gauss };
            if out.json {
                print!("{}", json(&r));
            } else {
                println!("K = {:?} (power basis, k = {k})", r.k.coeffs);
                println!("K * conj(K) = {:?}", r.norm);
                println!("K = -q mod 2(1 - zeta): {}", r.eq3);
                println!(
                    "G(chi)G(rho)/G(chi rho) = {:.6} {:+.6}i, relative error {:.2e}",
                    r.gauss.via_gauss[0], r.gauss.via_gauss[1], r.gauss.rel_err
                );
            }
            Ok(r.eq3 && r.norm == Some(ctx.q() as i64) && r.gauss.ok())
        }
        Command::Verify { field, k, predict_only, bound, csv, out } => {
            let start = Instant::now();
            let r = verify(field.p, field.m, k, predict_only, bound.min(DEFAULT_MAX_ORDER))?;
            eprintln!("verify: {:.3}s", start.elapsed().as_secs_f64());
            if out.json {
                print!("{}", json(&r));
            } else if csv {
                println!("{CSV_HEADER}");
                for line in r.csv_rows() {
                    println!("{line}");
                }
            } else {
                print!("{}", r.to_text());
            }
            Ok(r.all_match())
        }
        Command::Grid { q_max, csv, out } => {
            let start = Instant::now();
            let reports = grid(q_max.min(DEFAULT_MAX_ORDER))?;
            eprintln!("grid: {} fields in {:.3}s", reports.len(), start.elapsed().as_secs_f64());
            if out.json {
                print!("{}", json(&reports));
            } else if csv {
                println!("{CSV_HEADER}");
                for r in &reports {
                    for line in r.csv_rows() {
                        println!("{line}");
                    }
                }
            } else {
                for r in &reports {
                    print!("{}", r.to_text());
                }
            }
            let mismatches: usize = reports
                .iter()
                .map(|r| r.rows.iter().filter(|x| !x.matches).count())
                .sum();
            if !out.json && !csv {
                println!("mismatches: {mismatches}");
            }
            Ok(mismatches == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
