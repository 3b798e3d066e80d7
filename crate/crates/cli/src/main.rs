//! Command-line front end tying the workbench together.
//!
//! Every subcommand emits a JSON report with a schema version and a
//! provenance block echoing the constant ledger in use. Exit codes:
//! 0 all checks pass, 1 certified violation, 2 undetermined or precision
//! exhaustion, 64 usage error.

mod commands;
mod config;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "mahler", disable_help_subcommand = true)]
#[command(about = "Certified workbench for modular transcendence inequalities")]
struct Cli {
    /// Config file path (falls back to MAHLER_CONFIG, then config/default.toml).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a canonical q-expansion in the series file format.
    Expand(ExpandArgs),
    /// Check the Hecke bound on an exact cusp-form coefficient table.
    CertifyHecke(CertifyHeckeArgs),
    /// Build the auxiliary polynomial and function for a given N.
    BuildAux(BuildAuxArgs),
    /// Scan primes for a certified nonzero F(q^P).
    ScanPrimes(ScanPrimesArgs),
    /// Height measures of an algebraic number given its polynomial.
    Height(HeightArgs),
    /// Modular polynomial computation / verification / certification.
    Modpoly(ModpolyArgs),
    /// Prime statistics and bound certification.
    Primes(PrimesArgs),
    /// The inequality chain.
    Chain(ChainArgs),
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Which form to expand: delta, j, or e4.
    #[arg(long)]
    form: String,
    /// Truncation exponent (series modulo q^K).
    #[arg(long)]
    trunc: i64,
}

#[derive(Args, Debug)]
struct CertifyHeckeArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    trunc: i64,
}

#[derive(Args, Debug)]
struct BuildAuxArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long)]
    trunc: Option<i64>,
}

#[derive(Args, Debug)]
struct ScanPrimesArgs {
    /// Rational q in decimal, e.g. 0.5.
    #[arg(long)]
    q: String,
    #[arg(long = "N", default_value_t = 4)]
    n: u32,
    #[arg(long)]
    trunc: Option<i64>,
    #[arg(long)]
    pmax: u64,
    /// Residue class "a,d": restrict to primes = a (mod d).
    #[arg(long)]
    residue: Option<String>,
}

#[derive(Args, Debug)]
struct HeightArgs {
    /// Comma-separated integer coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    minpoly: String,
    /// Root index in the deterministic ordering (default 0).
    #[arg(long, default_value_t = 0)]
    root: usize,
}

#[derive(Args, Debug)]
struct ModpolyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    compute: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    certify: bool,
    /// Truncation for the identity check (default 30).
    #[arg(long, default_value_t = 30)]
    k: i64,
}

#[derive(Args, Debug)]
struct PrimesArgs {
    #[command(subcommand)]
    cmd: PrimesCmd,
}

#[derive(Subcommand, Debug)]
enum PrimesCmd {
    /// Certify the prime-sum and Chebyshev bounds up to a limit.
    Certify {
        #[arg(long)]
        limit: u64,
        /// Progression "a,d" with gcd(a, d) = 1.
        #[arg(long)]
        progression: Option<String>,
    },
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[command(subcommand)]
    cmd: ChainCmd,
}

#[derive(Subcommand, Debug)]
enum ChainCmd {
    /// Evaluate the full inequality chain on a desk instance.
    Run {
        /// Rational |q| in decimal (also used as the analytic q).
        #[arg(long)]
        q: String,
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "deg-q", default_value_t = 1)]
        deg_q: u64,
        /// Hypothetical h(q) (decimal).
        #[arg(long = "h-q", default_value = "0.6931471805599454")]
        h_q: String,
        #[arg(long = "deg-j", default_value_t = 1)]
        deg_j: u64,
        /// Hypothetical h(J(q)) (decimal).
        #[arg(long = "h-j", default_value = "0.0")]
        h_j: String,
        #[arg(long)]
        trunc: Option<i64>,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// Smallest prime beyond the algebraic specialization bound.
    Cutoff {
        #[arg(long = "deg-q")]
        deg_q: u64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 2)]
        floor: u64,
    },
    /// Minimal M forcing the final contradiction for a given C18.
    Threshold {
        #[arg(long)]
        c18: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // usage problems exit 64; help/version print normally
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    std::process::exit(EXIT_PASS);
                }
                _ => {
                    let _ = e.print();
                    std::process::exit(EXIT_USAGE);
                }
            }
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            // precision exhaustion is an expected retryable outcome
            let s = format!("{:#}", e);
            if s.contains("precision") || s.contains("undetermined") {
                EXIT_UNDETERMINED
            } else {
                EXIT_USAGE
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let (cfg, constants) = config::load_all(cli.config.as_deref())?;
    let ctx = commands::Ctx { cfg, constants, out: cli.out };
    match cli.command {
        Command::Expand(a) => commands::expand(&ctx, &a.form, a.trunc),
        Command::CertifyHecke(a) => commands::certify_hecke(&ctx, a.n, a.l, a.trunc),
        Command::BuildAux(a) => commands::build_aux(&ctx, a.n, a.trunc),
        Command::ScanPrimes(a) => {
            commands::scan_primes(&ctx, &a.q, a.n, a.trunc, a.pmax, a.residue.as_deref())
        }
        Command::Height(a) => commands::height(&ctx, &a.minpoly, a.root),
        Command::Modpoly(a) => commands::modpoly(&ctx, a.p, a.compute, a.verify, a.certify, a.k),
        Command::Primes(a) => match a.cmd {
            PrimesCmd::Certify { limit, progression } => {
                commands::primes_certify(&ctx, limit, progression.as_deref())
            }
        },
        Command::Chain(a) => match a.cmd {
            ChainCmd::Run { q, n, deg_q, h_q, deg_j, h_j, trunc, pmax } => {
                commands::chain_run(&ctx, &q, n, deg_q, &h_q, deg_j, &h_j, trunc, pmax)
            }
            ChainCmd::Cutoff { deg_q, n, floor } => commands::chain_cutoff(&ctx, deg_q, n, floor),
            ChainCmd::Threshold { c18 } => commands::chain_threshold(&ctx, &c18),
        },
    }
}
