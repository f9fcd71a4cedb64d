//! Command-line front end.
//!
//! Exit codes: 0 success, 1 at least one claim refuted, 2 usage or
//! configuration error.

use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use qwitt_cli::parser::parse_expr;
use qwitt_cli::report::Report;
use qwitt_cli::suites::{run_all, run_suite, RunConfig, SUITE_NAMES};
use qwitt_core::canonical::{mod_inner_bracket, CanonicalForm};
use qwitt_core::derivation::SigmaDerivation;
use qwitt_core::laurent::to_pairs;
use qwitt_core::{LaurentPoly, QMode, TwistContext};

#[derive(Parser)]
#[command(
    name = "qwitt",
    version,
    about = "Exact computations with twisted derivations of Laurent polynomials"
)]
struct Cli {
    /// Exponent s of the endomorphism t -> q t^s
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<i64>,

    /// Specialize q to a nonzero rational NUM/DEN (default: formal q)
    #[arg(
        long,
        global = true,
        value_name = "NUM/DEN",
        allow_hyphen_values = true
    )]
    q: Option<String>,

    /// Exponent window A..B for windowed checks
    #[arg(long, global = true, value_name = "A..B", allow_hyphen_values = true)]
    window: Option<String>,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived objects g, d, lambda, T and delta of a context
    Delta,
    /// Exact bracket coefficient of [d_n, d_m], with its canonical
    /// reduction when the free part is nonempty
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Parse a Laurent coefficient and print its decomposition
    Reduce { expr: String },
    /// Emit the bracket table over a range of basis indices
    Table {
        /// Index range A..B for both n and m
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        range: String,
        /// Reduce each entry modulo inner derivations
        #[arg(long)]
        mod_inner: bool,
    },
    /// Run verification suites and report every claim
    Verify {
        /// Suite name (default: all suites)
        #[arg(long)]
        suite: Option<String>,
    },
}

struct UsageError(String);

fn parse_q(text: &str) -> Result<BigRational, UsageError> {
    BigRational::from_str(text).map_err(|e| UsageError(format!("invalid --q value '{text}': {e}")))
}

fn parse_window(text: &str) -> Result<(i64, i64), UsageError> {
    let err = || UsageError(format!("invalid range '{text}': expected A..B"));
    let (a, b) = text.split_once("..").ok_or_else(err)?;
    let lo: i64 = a.trim().parse().map_err(|_| err())?;
    let hi: i64 = b.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(UsageError(format!("empty range '{text}'")));
    }
    Ok((lo, hi))
}

fn build_context(cli: &Cli) -> Result<(Arc<TwistContext>, RunConfig), UsageError> {
    let s = cli
        .s
        .ok_or_else(|| UsageError("--s is required".to_string()))?;
    let qmode = match &cli.q {
        None => QMode::Formal,
        Some(text) => QMode::Specialized(parse_q(text)?),
    };
    let window = match &cli.window {
        None => (-6, 6),
        Some(text) => parse_window(text)?,
    };
    let cfg = RunConfig {
        s,
        qmode,
        window,
        seed: cli.seed,
    };
    let ctx = cfg.build_ctx().map_err(|e| UsageError(e.to_string()))?;
    Ok((ctx, cfg))
}

fn laurent_json(p: &LaurentPoly) -> serde_json::Value {
    json!(to_pairs(p))
}

fn canonical_json(cf: &CanonicalForm) -> serde_json::Value {
    json!({
        "alphas": cf.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "inner_witness": laurent_json(&cf.inner_witness),
    })
}

fn cmd_delta(ctx: &Arc<TwistContext>, cfg: &RunConfig, format: Format) -> Result<(), UsageError> {
    match format {
        Format::Json => {
            let value = json!({
                "s": cfg.s,
                "qmode": cfg.qmode.to_string(),
                "g": laurent_json(ctx.g()),
                "d": ctx.d(),
                "lambda": ctx.lambda().to_string(),
                "T": laurent_json(ctx.t_monomial()),
                "delta": laurent_json(ctx.delta_factor()),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        _ => {
            println!("s = {}", cfg.s);
            println!("q = {}", cfg.qmode);
            println!("g = {}", ctx.g());
            println!("d = {}", ctx.d());
            println!("lambda = {}", ctx.lambda());
            println!("T = {}", ctx.t_monomial());
            println!("delta = {}", ctx.delta_factor());
        }
    }
    Ok(())
}

fn cmd_bracket(
    ctx: &Arc<TwistContext>,
    cfg: &RunConfig,
    n: i64,
    m: i64,
    format: Format,
) -> Result<(), UsageError> {
    let br = SigmaDerivation::basis(ctx, n)
        .bracket(&SigmaDerivation::basis(ctx, m))
        .expect("same context");
    let canonical = (ctx.d() >= 1).then(|| CanonicalForm::of(&br));
    match format {
        Format::Json => {
            let value = json!({
                "s": cfg.s,
                "qmode": cfg.qmode.to_string(),
                "n": n,
                "m": m,
                "coefficient": laurent_json(br.coeff()),
                "canonical": canonical.as_ref().map(canonical_json),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        _ => {
            println!("[d_{n}, d_{m}] = ({}) Delta", br.coeff());
            if let Some(cf) = canonical {
                for (i, a) in cf.alphas.iter().enumerate() {
                    println!("alpha_{i} = {a}");
                }
                println!("inner_witness = {}", cf.inner_witness);
            }
        }
    }
    Ok(())
}

fn cmd_reduce(
    ctx: &Arc<TwistContext>,
    cfg: &RunConfig,
    expr: &str,
    format: Format,
) -> Result<(), UsageError> {
    let parsed = parse_expr(expr).map_err(|e| UsageError(e.to_string()))?;
    let coeff = parsed
        .eval(ctx.q())
        .map_err(|e| UsageError(e.to_string()))?;
    let cf = CanonicalForm::of(&SigmaDerivation::new(ctx, coeff.clone()));
    match format {
        Format::Json => {
            let value = json!({
                "s": cfg.s,
                "qmode": cfg.qmode.to_string(),
                "input": laurent_json(&coeff),
                "canonical": canonical_json(&cf),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        _ => {
            println!("input = {coeff}");
            for (i, a) in cf.alphas.iter().enumerate() {
                println!("alpha_{i} = {a}");
            }
            println!("inner_witness = {}", cf.inner_witness);
        }
    }
    Ok(())
}

fn cmd_table(
    ctx: &Arc<TwistContext>,
    cfg: &RunConfig,
    range: &str,
    mod_inner: bool,
    format: Format,
) -> Result<(), UsageError> {
    let (lo, hi) = parse_window(range)?;
    let d = ctx.d();
    if mod_inner && d == 0 {
        return Err(UsageError("no free part".to_string()));
    }
    match format {
        Format::Csv => {
            let mut out = String::new();
            if mod_inner {
                let header: Vec<String> = (0..d).map(|i| format!("d{i}")).collect();
                out.push_str(&format!("n,m,{}\n", header.join(",")));
                for n in lo..=hi {
                    for m in lo..=hi {
                        let coords = mod_inner_bracket(ctx, n, m).expect("d >= 1");
                        let cells: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                        out.push_str(&format!("{n},{m},{}\n", cells.join(",")));
                    }
                }
            } else {
                out.push_str("n,m,coefficient\n");
                for n in lo..=hi {
                    for m in lo..=hi {
                        let br = SigmaDerivation::basis(ctx, n)
                            .bracket(&SigmaDerivation::basis(ctx, m))
                            .expect("same context");
                        out.push_str(&format!("{n},{m},{}\n", br.coeff()));
                    }
                }
            }
            print!("{out}");
        }
        _ => {
            let mut entries = Vec::new();
            for n in lo..=hi {
                for m in lo..=hi {
                    let br = SigmaDerivation::basis(ctx, n)
                        .bracket(&SigmaDerivation::basis(ctx, m))
                        .expect("same context");
                    let mut entry = json!({
                        "n": n,
                        "m": m,
                        "coefficient": laurent_json(br.coeff()),
                    });
                    if mod_inner {
                        entry["canonical"] = canonical_json(&CanonicalForm::of(&br));
                    }
                    entries.push(entry);
                }
            }
            let value = json!({
                "s": cfg.s,
                "qmode": cfg.qmode.to_string(),
                "entries": entries,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
    }
    Ok(())
}

fn cmd_verify(
    ctx: &Arc<TwistContext>,
    cfg: &RunConfig,
    suite: Option<&str>,
    format: Format,
) -> Result<bool, UsageError> {
    let claims = match suite {
        None | Some("all") => run_all(ctx, cfg),
        Some(name) => run_suite(name, ctx, cfg).ok_or_else(|| {
            UsageError(format!(
                "unknown suite '{name}'; expected one of: {}",
                SUITE_NAMES.join(", ")
            ))
        })?,
    };
    let report = Report::new(cfg.s, &cfg.qmode, &claims);
    match format {
        Format::Json => print!("{}", report.to_json()),
        _ => print!("{}", report.to_plain()),
    }
    Ok(report.refuted())
}

fn run(cli: &Cli) -> Result<bool, UsageError> {
    let (ctx, cfg) = build_context(cli)?;
    match &cli.command {
        Command::Delta => cmd_delta(&ctx, &cfg, cli.format).map(|_| false),
        Command::Bracket { n, m } => cmd_bracket(&ctx, &cfg, *n, *m, cli.format).map(|_| false),
        Command::Reduce { expr } => cmd_reduce(&ctx, &cfg, expr, cli.format).map(|_| false),
        Command::Table { range, mod_inner } => {
            cmd_table(&ctx, &cfg, range, *mod_inner, cli.format).map(|_| false)
        }
        Command::Verify { suite } => cmd_verify(&ctx, &cfg, suite.as_deref(), cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
