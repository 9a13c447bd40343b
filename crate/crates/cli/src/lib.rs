//! Command-line front end: point evaluation, grid tables, convergence
//! studies and the identity self-test.
//!
//! Exit codes: 0 ok, 1 evaluation error or failed identity, 2 value with
//! warnings, 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use besselquad::identities::SuiteConfig;
use besselquad::quadrature::QuadratureSpec;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

mod commands;
mod parse;
mod render;

pub use commands::{
    cmd_converge, cmd_eval, cmd_selftest, cmd_table, converge_rows, selftest_with, CliError,
    ConvergeRow, EvalRequest, Format, FunctionArg, Rendered, ReprArg, SelftestRequest,
    TableRequest, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, EXIT_WARNINGS,
};
pub use parse::{parse_complex, parse_complex_list, parse_node_list};
pub use render::CSV_HEADER;

const DEFAULT_N_START: usize = 32;
const DEFAULT_N_MAX: usize = 8192;

#[derive(Debug, Parser)]
#[command(name = "besselquad", version, about = "Bessel functions of complex order and argument")]
pub struct Cli {
    /// Relative tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub rtol: f64,
    /// Absolute tolerance
    #[arg(long, global = true, default_value_t = 1e-300)]
    pub atol: f64,
    /// Node cap of the periodic rule (power of two)
    #[arg(long, global = true, env = "BESSELQUAD_NMAX")]
    pub nmax: Option<usize>,
    /// Seed for the self-test's random samples
    #[arg(long, global = true, default_value_t = 24301)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for `table` (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one point
    Eval(EvalArgs),
    /// Evaluate a grid of orders and arguments
    Table(TableArgs),
    /// Run the identity suite
    Selftest(SelftestArgs),
    /// Fixed-size rules under node doubling
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    #[arg(long = "fn", value_enum, ignore_case = true, default_value = "J")]
    pub function: FunctionArg,
    #[arg(long = "repr", alias = "representation", value_enum, default_value = "auto")]
    pub representation: ReprArg,
    /// Derivative order (Jderiv)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub k: Complex64,
    /// Order shift (J) or coefficient index (kappa)
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub n: i64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Comma-separated orders
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Vec<Complex64>,
    /// Comma-separated arguments
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Vec<Complex64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only these identities (comma-separated ids)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Describe each identity and its first failure
    #[arg(long, short)]
    pub verbose: bool,
    /// Random samples per identity
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Comma-separated ascending powers of two
    #[arg(long, default_value = "16,32,64,128")]
    pub nodes: String,
}

impl Cli {
    fn spec(&self) -> QuadratureSpec {
        let n_max = self.nmax.unwrap_or(DEFAULT_N_MAX);
        QuadratureSpec {
            n_start: DEFAULT_N_START.min(n_max),
            n_max,
            rtol: self.rtol,
            atol: self.atol,
        }
    }

    fn request(&self, f: &FunctionArgs, mu: Complex64, z: Complex64) -> EvalRequest {
        EvalRequest {
            function: f.function.into(),
            mu,
            z,
            k: f.k,
            n: f.n,
            spec: self.spec(),
            representation: f.representation.into(),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(&cli.request(&a.function, a.mu, a.z), cli.format),
        Command::Table(a) => {
            let table = TableRequest {
                request: cli.request(&a.function, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
                mu_grid: a.mu.clone(),
                z_grid: a.z.clone(),
                format: cli.format,
            };
            cmd_table(&table, cli.threads)
        }
        Command::Selftest(a) => {
            let req = SelftestRequest {
                config: SuiteConfig {
                    seed: cli.seed,
                    only: (!a.only.is_empty()).then(|| a.only.clone()),
                    spec: cli.spec(),
                    random_samples: a.samples,
                },
                verbose: a.verbose,
                format: cli.format,
            };
            cmd_selftest(&req)
        }
        Command::Converge(a) => {
            let nodes = parse_node_list(&a.nodes).map_err(CliError::Usage)?;
            cmd_converge(&cli.request(&a.function, a.mu, a.z), &nodes, cli.format)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let _ = out.write_all(r.stdout.as_bytes());
            let _ = err.write_all(r.stderr.as_bytes());
            r.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
