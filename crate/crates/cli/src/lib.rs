//! Argument parsing and command dispatch for the `lefschetz` binary.

mod commands;
mod manifest;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz::exact::{PrimeField, MERSENNE_31};
use lefschetz::oracle::OracleConfig;
use lefschetz::{AlgebraSpec, Error};

pub use manifest::{manifest, Expectation, Item};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Weak Lefschetz analysis for powers of generic linear forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function: closed form next to the oracle.
    Hf(HfArgs),
    /// WLP report from the symbolic classifiers and the oracle.
    Wlp(WlpArgs),
    /// Divisor classes on the blowup of the plane.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Gelfand-Tsetlin pattern counts.
    #[command(subcommand)]
    Gt(GtCommand),
    /// Direct oracle computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the regression manifest.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args, Clone)]
pub struct SpecArgs {
    /// Number of variables.
    #[arg(short = 'r')]
    pub r: u32,
    /// Number of forms (with -t).
    #[arg(short = 'n', requires = "t", conflicts_with = "exponents")]
    pub n: Option<usize>,
    /// Common exponent (with -n).
    #[arg(short = 't', requires = "n")]
    pub t: Option<u32>,
    /// Comma-separated exponents, one per form.
    #[arg(long, value_delimiter = ',')]
    pub exponents: Option<Vec<u32>>,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<AlgebraSpec, Error> {
        match (&self.exponents, self.n, self.t) {
            (Some(u), _, _) => AlgebraSpec::new(self.r, u.clone()),
            (None, Some(n), Some(t)) => AlgebraSpec::uniform(self.r, n, t),
            _ => Err(Error::InvalidArgument("give -n and -t, or --exponents".into())),
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct OracleArgs {
    /// Prime modulus, in [2^31 - 1, 2^32).
    #[arg(long, env = "LEFSCHETZ_PRIME", default_value_t = MERSENNE_31)]
    pub prime: u64,
    #[arg(long, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub trials: u32,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl OracleArgs {
    pub fn config(&self) -> Result<OracleConfig, Error> {
        OracleConfig::new(PrimeField::new(self.prime)?, self.seed, self.trials)
    }
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HfArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub from: Option<u32>,
    #[arg(long)]
    pub to: Option<u32>,
    #[arg(long)]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct WlpArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCommand {
    /// List the (-1)-curves.
    Curves {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Whether d E_0 - m (E_1 + .. + E_n) is effective.
    Effective {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: i64,
        #[arg(short = 'm')]
        m: i64,
    },
    /// Whether d E_0 - m (E_1 + .. + E_n) has h^1 > 0.
    Irregular {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: i64,
        #[arg(short = 'm')]
        m: i64,
    },
    /// First degree where injectivity is no longer guaranteed (four variables).
    Bound {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 't')]
        t: i64,
    },
    /// Smallest intersection of a (-1)-curve with D'_m.
    Worst {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 't')]
        t: i64,
        #[arg(short = 'm')]
        m: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GtCommand {
    /// Pattern counts in one degree, for every convention.
    Count {
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 't')]
        t: u32,
        #[arg(short = 'i')]
        i: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare every convention with the closed form on a grid.
    Resolve {
        /// Cells r:t, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2:2,3:2,2:3")]
        grid: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the column-one injection for A_{2k+1,t}.
    Odd {
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 't')]
        t: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Print the random forms for a seed.
    Forms {
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// dim I_j of the power ideal.
    Ideal {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'j')]
        j: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Rank of A_j -> A_{j+1}.
    Rank {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'j')]
        j: u32,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// h^0 and h^1 of degree-j forms with fat points.
    Fatpoint {
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'j')]
        j: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<u32>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Socle degree.
    Socle {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only items of this group.
    #[arg(long)]
    pub only: Option<String>,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match commands::dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Usage problems exit with 2; failures to settle the mathematics with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Unsupported(_) => EXIT_USAGE,
        Error::Precision(_) | Error::OutOfDeskScale(_) | Error::Inconclusive(_) => EXIT_DISCREPANCY,
    }
}
