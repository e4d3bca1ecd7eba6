//! Command-line surface.
//!
//! Exit codes: 0 success / verification match, 1 usage error,
//! 2 verification mismatch, 3 reduction failure.

use clap::{Parser, Subcommand};
use rug::Integer;

use narayana::report::{render_hits, render_steps, render_summary, OutputFormat};
use narayana::verify::{render_verify, run_verify, RunConfig};
use narayana::{
    full_reduction_with, initial_n_bound, narayana_range, search_hits, step1_with, step2_with,
    step3_with, Error, ReductionContext, StepReport,
};

const EXIT_USAGE: i32 = 1;
const EXIT_MISMATCH: i32 = 2;
const EXIT_REDUCTION: i32 = 3;

/// Parses a positive integer that may use scientific shorthand like 2e51.
fn parse_big(s: &str) -> Result<Integer, String> {
    let s = s.trim();
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<u32>().map_err(|_| "bad exponent".to_string())?),
        None => (s, 0),
    };
    let m: Integer = mantissa
        .parse()
        .map_err(|_| format!("not an integer: {s:?}"))?;
    use rug::ops::Pow;
    let v = m * Integer::from(10).pow(exp);
    if v < 1 {
        return Err("value must be >= 1".into());
    }
    Ok(v)
}

#[derive(Parser)]
#[command(
    name = "narayana",
    version,
    about = "Narayana numbers as concatenations of three repdigits: bounds, reduction, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Smallest base rho to consider
    #[arg(long, global = true, default_value_t = 2)]
    base_min: u32,

    /// Largest base rho to consider
    #[arg(long, global = true, default_value_t = 10)]
    base_max: u32,

    /// Largest sequence index to scan
    #[arg(long, global = true, default_value_t = 600)]
    n_max: i64,

    /// Working precision in bits
    #[arg(long, global = true, env = "NARAYANA_PRECISION", default_value_t = 1024)]
    precision: u32,

    /// The reduction parameter M (accepts forms like 2e51)
    #[arg(long, global = true, default_value = "2e51", value_parser = parse_big)]
    big_m: Integer,

    /// Keep only splits with k <= m <= ell
    #[arg(long, global = true, default_value_t = false)]
    ordering: bool,

    /// Output format: table, csv, or json
    #[arg(long, global = true, default_value = "table")]
    format: OutputFormat,

    /// Worker threads for the sweeps (0 = default pool)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Use the narrower digit ranges 1..rho-1 for d2, d3
    #[arg(long, global = true, default_value_t = false)]
    strict_paper: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print sequence values for an index range
    Seq { from: i64, to: i64 },
    /// Exhaustive search for three-repdigit concatenations
    Search,
    /// Initial bound audit trail for one base
    Bound {
        #[arg(long)]
        rho: u32,
    },
    /// Dujella-Petho reduction for one base
    Reduce {
        #[arg(long)]
        rho: u32,
        /// Which step to run: 1, 2, 3, or all
        #[arg(long, default_value = "all")]
        step: String,
    },
    /// Full pipeline: reduce every base, search, diff against the known list
    Verify,
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            base_min: self.base_min,
            base_max: self.base_max,
            n_max: self.n_max,
            precision_bits: self.precision,
            m_big: self.big_m.clone(),
            enforce_ordering: self.ordering,
            output_format: self.format,
            parallel_workers: self.workers,
            strict_paper: self.strict_paper,
        }
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let config = cli.config();
    match &cli.command {
        Command::Seq { from, to } => {
            if from > to {
                return Err(Error::InvalidInstance(format!(
                    "need from <= to, got {from} > {to}"
                )));
            }
            for (i, v) in narayana_range(*from, *to)?.iter().enumerate() {
                println!("N({}) = {}", from + i as i64, v);
            }
            Ok(0)
        }
        Command::Search => {
            config.validate()?;
            let hits = search_hits(
                config.base_min..=config.base_max,
                4..=config.n_max,
                config.enforce_ordering,
            )?;
            print!("{}", render_hits(&hits, config.output_format));
            Ok(0)
        }
        Command::Bound { rho } => {
            if *rho < 2 {
                return Err(Error::BaseTooSmall(*rho));
            }
            let r = initial_n_bound(*rho);
            println!("rho = {}", r.rho);
            println!("H = 2.75e41 log^4(rho)          = {}", r.h);
            println!("8 H (log H)^3                   = {}", r.lemma3_bound);
            println!("8 H (95.42 + 4 log log rho)^3   = {}", r.derived_bound);
            println!("cap 5.6e48 log^7(rho)           = {}", r.cap);
            println!("initial bound on n              = {}", r.capped_bound);
            println!(
                "check 95.42 + 4 log log rho < 136 log rho: {}",
                if r.log_check { "pass" } else { "FAIL" }
            );
            Ok(0)
        }
        Command::Reduce { rho, step } => {
            if *rho < 2 {
                return Err(Error::BaseTooSmall(*rho));
            }
            config.validate()?;
            let opts = config.reduction_options();
            if step == "all" {
                let summary = full_reduction_with(*rho, &opts)?;
                print!("{}", render_summary(&summary, config.output_format));
                return Ok(0);
            }
            let ctx = ReductionContext::new(
                *rho,
                &opts.m_big,
                opts.precision,
                opts.max_extra_convergents,
            )?;
            let upto: u8 = step
                .parse()
                .map_err(|_| Error::InvalidInstance(format!("unknown step {step:?}")))?;
            if !(1..=3).contains(&upto) {
                return Err(Error::InvalidInstance(format!("unknown step {step:?}")));
            }
            let mut reports: Vec<StepReport> = Vec::new();
            let s1 = step1_with(&ctx)?;
            let ell_max = s1.bound.max(1) as u32;
            reports.push(s1);
            if upto >= 2 {
                let s2 = step2_with(&ctx, ell_max, opts.strict_paper)?;
                let m_max = s2.bound.max(1) as u32;
                reports.push(s2);
                if upto == 3 {
                    reports.push(step3_with(&ctx, ell_max, m_max, opts.strict_paper)?);
                }
            }
            let selected = vec![reports.pop().expect("at least step 1 ran")];
            print!("{}", render_steps(&selected, config.output_format));
            Ok(0)
        }
        Command::Verify => {
            config.validate()?;
            let report = run_verify(&config)?;
            print!("{}", render_verify(&report, config.output_format));
            Ok(if report.matched { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes; parse failures are usage errors
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            let code = match err {
                Error::EpsilonNeverPositive(..)
                | Error::PrecisionExhausted(..)
                | Error::NotReached => {
                    eprintln!("reduction failed: {err}");
                    EXIT_REDUCTION
                }
                _ => {
                    eprintln!("error: {err}");
                    EXIT_USAGE
                }
            };
            std::process::exit(code);
        }
    }
}
