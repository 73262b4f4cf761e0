use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cmds;
mod output;

/// Exact and Monte Carlo checks for generic behaviour of random matrix
/// products.
#[derive(Parser, Debug)]
#[command(name = "genericity", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, serde::Serialize)]
pub struct GlobalOpts {
    /// Directory for reports and the run manifest.
    #[arg(long, global = true, default_value = "genericity-out")]
    pub out: PathBuf,
    /// Worker threads for parallel censuses and experiments.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress the per-check summary on stdout.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug, serde::Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Exact walk distributions, transfer spectrum and decay fit.
    WalkMix(cmds::WalkMixArgs),
    /// Exhaustive event counts over a finite matrix group.
    Census(cmds::CensusArgs),
    /// Symplectic matrix with a prescribed reciprocal characteristic polynomial.
    Kirby(cmds::KirbyArgs),
    /// Homological pseudo-Anosov certificate for symplectic matrices.
    CertifyPa(cmds::MatrixArgs),
    /// Power-irreducibility certificate for unimodular matrices.
    CertifyIwip(cmds::MatrixArgs),
    /// Galois group certificate for an integer polynomial.
    Galois(cmds::GaloisArgs),
    /// Splitting-type laws with one coefficient fixed, prime by prime.
    RestrictedSplitting(cmds::SplittingArgs),
    /// Exhaustive check of point counts on y^d = f(x) against curve bounds.
    WeilScan(cmds::WeilArgs),
    /// Reducible fraction in SL(2,Z) height balls.
    HeightBall(cmds::HeightArgs),
    /// Seeded Monte Carlo trends over random words.
    Trend(cmds::TrendArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::WalkMix(_) => "walk-mix",
            Command::Census(_) => "census",
            Command::Kirby(_) => "kirby",
            Command::CertifyPa(_) => "certify-pa",
            Command::CertifyIwip(_) => "certify-iwip",
            Command::Galois(_) => "galois",
            Command::RestrictedSplitting(_) => "restricted-splitting",
            Command::WeilScan(_) => "weil-scan",
            Command::HeightBall(_) => "height-ball",
            Command::Trend(_) => "trend",
        }
    }
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    let mut out = match output::Run::start(&cli.global, cli.command.name(), &cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_CHECK_FAILED);
        }
    };
    let result = match cmds::dispatch(&cli.command, &mut out) {
        Ok(()) => out.finish(),
        Err(e) => {
            let _ = out.abort(&e);
            Err(e)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { EXIT_USAGE } else { EXIT_CHECK_FAILED })
        }
    }
}

/// Bad input, as opposed to a failed computation.
fn is_usage_error(e: &anyhow::Error) -> bool {
    use genericity::Error as E;
    if e.downcast_ref::<cmds::UsageError>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<E>(),
        Some(
            E::NotPrime(_)
                | E::NotMonic
                | E::Degree { .. }
                | E::NotSquarefree
                | E::InvalidArgument(_)
                | E::BudgetExceeded { .. }
                | E::Parse { .. }
                | E::Toml(_)
        )
    )
}
