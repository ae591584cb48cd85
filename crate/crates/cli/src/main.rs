//! `confspace` — command-line front end for the configuration-space algebra
//! toolkit: compute subcommands over JSON on standard streams, and
//! verification suites that run the identity battery with deterministic,
//! seed-reproducible reports.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 malformed input,
//! 3 domain precondition violated.

mod compute;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact arithmetic (rationals and the quadratic extensions).
    Exact,
    /// Double-precision complex arithmetic.
    Float,
}

/// A CLI-level error paired with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: the input could not be parsed or has the wrong shape.
    Malformed(String),
    /// Exit 3: the input parses but violates a mathematical precondition.
    Domain(String),
}

impl CliError {
    fn body(&self) -> Value {
        match self {
            CliError::Malformed(m) => json!({"error": {"kind": "malformed-input", "message": m}}),
            CliError::Domain(m) => json!({"error": {"kind": "domain-precondition", "message": m}}),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "confspace",
    version,
    about = "Exact and numeric computations on configuration spaces of points in the complex line, with verification suites."
)]
struct Cli {
    /// Arithmetic mode for compute subcommands.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Read the input JSON from FILE instead of standard input.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Restrict a verification suite to a single configuration size.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant of a configuration ({"points": […]}) or of monic
    /// coefficients ({"z": […]}).
    Discriminant,
    /// Coefficients of the monic polynomial with the given roots.
    Vieta,
    /// Numeric roots of a monic polynomial given by its coefficients.
    Roots,
    /// Apply a parametrized automorphism to a configuration.
    ApplyAut,
    /// Compose two parametrized automorphisms (outer after inner).
    ComposeAut,
    /// Order of a parametrized automorphism, if at most the bound.
    AutOrder,
    /// The affine map of the line realizing an automorphism pointwise.
    TameMap,
    /// Cubic resolvent of a depressed quartic.
    Resolvent,
    /// Tschirnhausen reduction of a depressed quartic to a two-parameter base point.
    Tschirnhausen,
    /// j-invariant of the fiber over a base point, with the closed form and
    /// its sign status.
    JInvariant,
    /// The order-12 cyclic action on quartics or base points.
    Mu12,
    /// Preimages of a configuration under the discriminant-scaling covering.
    Preimages,
    /// The scaling- and inversion-invariant function of a nonzero configuration.
    #[command(name = "h-n")]
    HN,
    /// The explicit isomorphisms and involutions between configuration models.
    SigmaIso,
    /// The action of a slot permutation on configurations avoiding {0, 1}.
    Mobius,
    /// Run a verification suite.
    Verify {
        /// Which suite to run.
        suite: verify::Suite,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Malformed(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("invalid JSON: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Cmd::Verify { suite } = &cli.cmd {
        return match verify::run_suite(*suite, cli.seed, cli.tol, cli.n) {
            true => ExitCode::SUCCESS,
            false => ExitCode::from(1),
        };
    }

    let result = read_input(&cli.input).and_then(|input| match &cli.cmd {
        Cmd::Discriminant => compute::discriminant(&input),
        Cmd::Vieta => compute::vieta(&input),
        Cmd::Roots => compute::roots(&input, cli.tol),
        Cmd::ApplyAut => compute::apply_aut(&input),
        Cmd::ComposeAut => compute::compose_aut(&input),
        Cmd::AutOrder => compute::aut_order(&input, cli.tol),
        Cmd::TameMap => compute::tame_map(&input),
        Cmd::Resolvent => compute::resolvent(&input),
        Cmd::Tschirnhausen => compute::tschirnhausen_cmd(&input),
        Cmd::JInvariant => compute::j_invariant_cmd(&input),
        Cmd::Mu12 => compute::mu12(&input, cli.mode),
        Cmd::Preimages => compute::preimages(&input, cli.tol),
        Cmd::HN => compute::h_n_cmd(&input),
        Cmd::SigmaIso => compute::sigma_iso(&input),
        Cmd::Mobius => compute::mobius(&input),
        Cmd::Verify { .. } => unreachable!("handled above"),
    });

    match result {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", e.body());
            ExitCode::from(e.code())
        }
    }
}
