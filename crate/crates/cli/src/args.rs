use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "restrikt",
    version,
    about = "Newton-polyhedron invariants and restriction exponent regions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for the numerical sweeps (overridden by RESTRIKT_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report.
    Analyze(PhaseOutput),
    /// Vertices of the admissible exponent polygon.
    Polygon(PhaseOutput),
    /// Breakpoints of the supporting-line function K.
    Kfunction(PhaseOutput),
    /// Vertices of the Newton polyhedra of the phase, its adapted form and the augmented polyhedron.
    Polyhedron(PhaseOutput),
    /// Numerical checks of the decay laws.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    /// Polynomial in x1, x2, or the name of a corpus phase.
    #[arg(long)]
    pub phi: String,
    /// Drop linear terms instead of rejecting them.
    #[arg(long)]
    pub normalize_gradient: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// JSON output (the default).
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhaseOutput {
    #[command(flatten)]
    pub phase: PhaseArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Fit the decay of the oscillatory surface integral against the height.
    Decay {
        #[command(flatten)]
        phase: PhaseArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Smallest dyadic exponent k of λ = 2^k.
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        lambda_min: i32,
        #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
        lambda_max: i32,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
    /// Van der Corput bound for a one-dimensional phase f(x1).
    Vdc {
        #[arg(long, default_value = "x1^2")]
        phi: String,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Integration interval `a,b`.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        interval: String,
        #[arg(long, value_enum, default_value_t = Amplitude::One)]
        amplitude: Amplitude,
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        lambda_min: i32,
        #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
        lambda_max: i32,
    },
    /// Scaling collapse of the Airy-type integral with cubic phase b(t)t³.
    Airy {
        /// The factor b as a polynomial in x1.
        #[arg(long, default_value = "1 + x1")]
        phi: String,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma-separated values of v = λ^{2/3} u.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 0.25)]
        radius: f64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        lambda_min: i32,
        #[arg(long, default_value_t = 18, allow_negative_numbers = true)]
        lambda_max: i32,
    },
    /// Sample the phase on Knapp boxes for every weight of the augmented polyhedron.
    Knapp {
        #[command(flatten)]
        phase: PhaseArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Smallest dyadic exponent k of ε = 2^k.
        #[arg(long, default_value_t = -20, allow_negative_numbers = true)]
        eps_min: i32,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        eps_max: i32,
        #[arg(long, default_value_t = restrikt_lab::knapp::DEFAULT_GRID)]
        grid: usize,
        /// Exponent pair `x,y` for the exact comparison; defaults to the critical exponent.
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Amplitude {
    One,
    Bump,
}
