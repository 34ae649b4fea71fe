//! `syzygy`: batch front end for Koszul cohomology computations and the
//! verifications around the tangent developable of the rational normal curve.

mod commands;
mod fields;
mod mesh;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Failure, Outcome};
use fields::FieldArg;

#[derive(Parser, Debug)]
#[command(name = "syzygy", version, about = "Exact Koszul cohomology and tangent developable verifications")]
pub struct Cli {
    /// rationals, prime:<p> or consensus:<k> (k random primes above 2^30)
    #[arg(long, global = true, default_value = "rationals", value_parser = fields::parse_field_arg)]
    pub field: FieldArg,
    /// Seed for every randomized choice (prime selection, probes)
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached graded modules
    #[arg(long, global = true, env = "SYZYGY_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Allow genera beyond the default budget (7 over Q, 10 over prime fields)
    #[arg(long, global = true)]
    pub unsafe_budget: bool,
    /// Include wall-clock timings in reports (makes output non-reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Rnc,
    Tangent,
    Pushforward,
    Omega,
    Ci,
    PolynomialRing,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti table of a graded module, with (N_p) checks
    Betti {
        #[arg(long, value_enum)]
        object: ObjectArg,
        #[arg(long, default_value_t = 3)]
        genus: usize,
        /// Largest homological index (defaults to the number of variables)
        #[arg(long)]
        pmax: Option<usize>,
        /// Largest row of the table; 2 suffices for (N_p)
        #[arg(long, default_value_t = 2)]
        qmax: usize,
        /// Quadrics in Z0..Z3 for the complete intersection (repeatable)
        #[arg(long = "quadric")]
        quadrics: Vec<String>,
    },
    /// K_(i,1) of the tangent developable three ways, and the (N_p) check
    Folk {
        #[arg(long)]
        genus: usize,
        /// Skip the Betti table (N_p) check
        #[arg(long)]
        no_np: bool,
    },
    /// Character-level Hermite reciprocity for 1 <= a <= b+1 <= amax+1
    Hermite {
        #[arg(long, default_value_t = 12)]
        amax: usize,
    },
    /// Wahl and co-Wahl certificates for 1 <= i <= imax
    Wahl {
        #[arg(long, default_value_t = 6)]
        imax: usize,
    },
    /// Koszul module dimensions W_q(V, A) and the decomposable-form probe
    Koszulmodule {
        /// JSON instance file: {"dim": n, "forms": [[[a, b, "c"], ...], ...], "qmax": q}
        #[arg(long, conflicts_with = "co_wahl")]
        instance: Option<PathBuf>,
        /// Use V = S^(i+1) U with A the co-Wahl image of S^(2i) U
        #[arg(long)]
        co_wahl: Option<usize>,
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        probe_trials: usize,
    },
    /// Odd-genus binomial identity sweep and dimension finisher
    Euler {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Run the linear algebra finisher for n up to this value
        #[arg(long, default_value_t = 5)]
        verify_upto: usize,
    },
    /// Triangulated tangent developable of the twisted cubic as a text mesh
    Mesh {
        #[arg(long, default_value_t = 3)]
        genus: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Write to this file instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Csv => outcome
            .csv
            .clone()
            .ok_or_else(|| Failure::Config("csv output is not available for this command".into()))?,
    };
    let mut out = std::io::stdout().lock();
    out.write_all(body.as_bytes()).map_err(|e| Failure::Computation(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    let result = commands::run(&cli).and_then(|outcome| {
        emit(&cli, &outcome)?;
        Ok(outcome.verified)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(4)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
