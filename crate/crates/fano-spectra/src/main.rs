//! `fano-spectra` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fano_spectra::cli::{
    self, CertifyArgs, CommonOpts, OracleArgs, OutputFormat, ScanArgs, SolveArgs,
};
use fano_spectra::rootfinder::Precision;

#[derive(Debug, Parser)]
#[command(
    name = "fano-spectra",
    version,
    about = "Spectral radius of quantum multiplication by c1 for P^1-bundles over P^n, via the mirror superpotential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Relative residual tolerance for accepted roots.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Root refinement precision: double, extended, or auto (escalate on
    /// demand).
    #[arg(long, default_value = "auto")]
    precision: Precision,

    /// Seed for the randomized multivariate oracle.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn opts(&self) -> CommonOpts {
        CommonOpts {
            tol: self.tol,
            precision: self.precision,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a single instance: eigenvalues, spectral radius, verdicts.
    Solve {
        /// Base dimension of P^n.
        #[arg(long)]
        n: u32,

        /// Twist of O(a).
        #[arg(long)]
        a: u32,

        /// Also run the independent oracles and embed the agreement block.
        #[arg(long)]
        oracle: bool,

        /// Newton starts for the multivariate oracle (0 = default).
        #[arg(long, default_value_t = 0)]
        oracle_budget: usize,

        /// Write the eigenvalue scatter (re,im,modulus,region) to this CSV.
        #[arg(long)]
        plot_data: Option<PathBuf>,

        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: OutputFormat,

        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        common: Common,
    },

    /// Scan n over a range at fixed a and report Galkin verdicts.
    Scan {
        #[arg(long)]
        a: u32,

        #[arg(long, default_value_t = 1)]
        n_min: u32,

        #[arg(long)]
        n_max: u32,

        #[arg(long, default_value = "json")]
        format: OutputFormat,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        common: Common,
    },

    /// Certify the root-localization bounds at one instance.
    Certify {
        #[arg(long)]
        n: Option<u32>,

        #[arg(long)]
        a: Option<u32>,

        /// Check only the four fixed annulus-constant inequalities.
        #[arg(long)]
        varep_only: bool,

        #[arg(long, default_value = "json")]
        format: OutputFormat,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        common: Common,
    },

    /// Compare the univariate pipeline against the independent oracles.
    Oracle {
        #[arg(long)]
        n: u32,

        #[arg(long)]
        a: u32,

        /// Newton starts for the multivariate oracle (0 = default).
        #[arg(long, default_value_t = 0)]
        budget: usize,

        #[arg(long)]
        out: Option<PathBuf>,

        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            n,
            a,
            oracle,
            oracle_budget,
            plot_data,
            format,
            out,
            common,
        } => cli::run_solve(
            n,
            a,
            &common.opts(),
            &SolveArgs {
                oracle,
                oracle_budget,
                plot_data,
                format: Some(format),
                out,
            },
        ),
        Command::Scan {
            a,
            n_min,
            n_max,
            format,
            out,
            common,
        } => cli::run_scan(
            a,
            n_min,
            n_max,
            &common.opts(),
            &ScanArgs {
                format: Some(format),
                out,
            },
        ),
        Command::Certify {
            n,
            a,
            varep_only,
            format,
            out,
            common,
        } => cli::run_certify(
            n,
            a,
            &common.opts(),
            &CertifyArgs {
                varep_only,
                format: Some(format),
                out,
            },
        ),
        Command::Oracle {
            n,
            a,
            budget,
            out,
            common,
        } => cli::run_oracle(n, a, &common.opts(), &OracleArgs { budget, out }),
    };
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    ExitCode::from(u8::try_from(outcome.exit_code).unwrap_or(1))
}
