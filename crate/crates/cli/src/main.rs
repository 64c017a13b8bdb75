use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use overpart_core::enumeration::{count_f, count_g, LargestPart};
use overpart_core::recurrence::{g_series, limit_u};
use overpart_core::series::product_f;
use overpart_core::verify::{battery, verify_system, Check, Params};
use overpart_core::{AlphaSystem, CountTable, QLaurent, RecError, VerificationReport};

mod render;

#[derive(Parser)]
#[command(
    name = "overpart",
    version,
    about = "Count, expand and verify the overpartition identity F = G"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count overpartitions on the F side, the G side or both.
    Count(CountArgs),
    /// Expand the product, the recurrence limit or g_m as a series.
    Expand(ExpandArgs),
    /// Run identity checks on one system or on the built-in battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Modulus N.
    #[arg(long = "N", value_name = "N")]
    modulus: Option<u64>,
    /// Generators a(1) < ... < a(r), comma separated.
    #[arg(long = "a", value_delimiter = ',', value_name = "A")]
    a: Vec<u64>,
}

impl SystemArgs {
    fn build(&self) -> Result<AlphaSystem, String> {
        let n = self.modulus.ok_or("--N is required")?;
        if self.a.is_empty() {
            return Err("--a is required".into());
        }
        AlphaSystem::new(&self.a, n).map_err(|e| format!("invalid system ({e:?}): {e}"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Product,
    Limit,
    Gm,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, default_value_t = 40)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "all")]
    side: Side,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, default_value_t = 40)]
    trunc: i64,
    /// Subscript for `--what gm`.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Verify every system of the built-in battery instead of one system.
    #[arg(long, conflicts_with_all = ["modulus", "a"])]
    battery: bool,
    #[arg(long, default_value_t = 40)]
    trunc: i64,
    #[arg(long)]
    x_trunc: Option<usize>,
    #[arg(long)]
    ell_max: Option<usize>,
    /// Comma separated subset of lemma1, lemma2, eq357, key, rec, tmj, chain, theorem.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<Check>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

enum Failure {
    Invalid(String),
    Mismatch(String),
}

type Verdict = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verdict = match cli.command {
        Command::Count(args) => count(args),
        Command::Expand(args) => expand(args),
        Command::Verify(args) => verify(args),
    };
    match verdict {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn count(args: CountArgs) -> Verdict {
    let sys = args.system.build().map_err(Failure::Invalid)?;
    let mut tables: Vec<(&str, CountTable)> = Vec::new();
    if args.side != Side::G {
        tables.push(("F", count_f(&sys, args.n_max)));
    }
    if args.side != Side::F {
        tables.push(("G", count_g(&sys, args.n_max, LargestPart::none())));
    }
    let mismatch = match tables.as_slice() {
        [(_, f), (_, g)] => Some(f.first_mismatch(g)),
        _ => None,
    };
    match args.output {
        Output::Json => {
            let mut wire: Vec<Value> = tables
                .iter()
                .map(|(side, t)| serde_json::to_value(t.to_wire(&sys, side)).expect("serialisable"))
                .collect();
            let out = match &mismatch {
                None => wire.pop().expect("one table"),
                Some(hit) => json!({
                    "first_mismatch": hit,
                    "tables": wire,
                    "verdict": if hit.is_none() { "pass" } else { "fail" },
                }),
            };
            println!("{out}");
        }
        Output::Csv => print!("{}", render::tables_csv(&tables)),
        Output::Table => {
            print!("{}", render::tables_text(&sys, &tables));
            if let Some(hit) = &mismatch {
                match hit {
                    None => println!("verdict: pass"),
                    Some(m) => println!("verdict: fail at n={} k={} (F {} vs G {})", m.n, m.k, m.left, m.right),
                }
            }
        }
    }
    Ok(mismatch.is_none_or(|hit| hit.is_none()))
}

fn expand(args: ExpandArgs) -> Verdict {
    let sys = args.system.build().map_err(Failure::Invalid)?;
    if args.trunc < 0 {
        return Err(Failure::Invalid(format!(
            "--trunc must be nonnegative, got {}",
            args.trunc
        )));
    }
    let series: QLaurent = match args.what {
        What::Product => product_f(&sys, args.trunc).map_err(|e| Failure::Mismatch(e.to_string()))?,
        What::Limit => limit_u(&sys, args.trunc).map_err(|e| Failure::Mismatch(e.to_string()))?,
        What::Gm => {
            let m = args.m.ok_or_else(|| Failure::Invalid("--what gm needs --m".into()))?;
            g_series(&sys, m, args.trunc).map_err(|e| match e {
                RecError::ConventionOutOfRange { .. } => Failure::Invalid(e.to_string()),
                other => Failure::Mismatch(other.to_string()),
            })?
        }
    };
    match args.output {
        Output::Json => println!("{}", series.to_json()),
        Output::Csv => print!("{}", render::series_csv(&series)),
        Output::Table => print!("{}", render::series_text(&series)),
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Verdict {
    let systems = if args.battery {
        battery()
    } else {
        vec![args.system.build().map_err(Failure::Invalid)?]
    };
    if args.trunc < 0 {
        return Err(Failure::Invalid(format!(
            "--trunc must be nonnegative, got {}",
            args.trunc
        )));
    }
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks.clone()
    };
    let params = |sys: &AlphaSystem| {
        let mut p = Params::defaults(sys, args.trunc);
        if let Some(x) = args.x_trunc {
            p.x_trunc = x;
        }
        if let Some(e) = args.ell_max {
            p.ell_max = e;
        }
        p
    };
    let results: Vec<Result<VerificationReport, RecError>> = thread::scope(|s| {
        let workers: Vec<_> = systems
            .iter()
            .map(|sys| {
                let p = params(sys);
                let checks = &checks;
                s.spawn(move || verify_system(sys, checks, p))
            })
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("worker panicked"))
            .collect()
    });
    let mut reports = Vec::new();
    for (sys, r) in systems.iter().zip(results) {
        reports.push(r.map_err(|e| Failure::Mismatch(format!("{sys}: {e}")))?);
    }
    let passed = reports.iter().all(VerificationReport::passed);
    match args.output {
        Output::Json => {
            let out = if args.battery {
                json!({"reports": reports, "verdict": if passed { "pass" } else { "fail" }})
            } else {
                serde_json::to_value(&reports[0]).expect("serialisable")
            };
            println!("{out}");
        }
        Output::Csv => print!("{}", render::reports_csv(&reports)),
        Output::Table => print!("{}", render::reports_text(&reports)),
    }
    Ok(passed)
}
