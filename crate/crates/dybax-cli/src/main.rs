//! `dybax` command line: catalog listing, family construction, relation and
//! Yang-Baxter verification, transfer matrices, spin chains, and the full
//! verification battery with machine-readable reports.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or I/O
//! error.

mod commands;
mod suite;
mod util;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use dybax::Error;

#[derive(Parser)]
#[command(
    name = "dybax",
    version,
    about = "Dynamical operator families on graph groupoids: build, Baxterize, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of built-in diagrams
    Graphs {
        #[command(subcommand)]
        action: GraphsAction,
    },
    /// Construct a family and emit the JSON interchange file
    Build(BuildArgs),
    /// Relation and equation checkers
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Row-to-row transfer matrix and commutation checks
    Transfer(TransferArgs),
    /// Spin-chain Hamiltonian, conservation checks, spectra
    Chain(ChainArgs),
    /// Full verification battery
    Suite(SuiteArgs),
}

#[derive(Subcommand)]
enum GraphsAction {
    /// Print the catalog with Coxeter numbers and dominant eigenvalues
    List {
        #[arg(long)]
        json: bool,
    },
}

/// Where the operator family comes from.
#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    /// Catalog family: A5, D6, E6, E7, E8, A5aff, D6aff, E6aff, ...
    #[arg(long, conflicts_with_all = ["graph_file", "line"])]
    pub graph: Option<String>,
    /// Custom graph file: one `u v` edge per line, `#` comments allowed
    #[arg(long, conflicts_with = "line")]
    pub graph_file: Option<PathBuf>,
    /// Line family on a height window: tri | hyp | ell
    #[arg(long)]
    pub line: Option<String>,
    /// Bracket level L for line families
    #[arg(long = "L", default_value_t = 3)]
    pub l: u32,
    /// Height window lo:hi for line families
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Generic height shift b for line families
    #[arg(long, default_value_t = dybax::families::DEFAULT_SHIFT_B, allow_negative_numbers = true)]
    pub shift_b: f64,
    /// Elliptic modulus tau, parsed as RE+IMi (e.g. 0.0+0.8i)
    #[arg(long, default_value = "0.0+0.8i")]
    pub tau: String,
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    /// Emit the report(s) as JSON
    #[arg(long)]
    pub json: bool,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Local dynamical Temperley-Lieb relations
    Tl(VerifyFamilyArgs),
    /// Global relations on an order-N fiber
    Global(VerifySitesArgs),
    /// Local dynamical Hecke relations (quadratic + braid)
    Hecke(VerifyHeckeArgs),
    /// Local dynamical BMW relations
    Bmw(VerifyBmwArgs),
    /// Murphy element commutation relations
    Murphy(VerifySitesArgs),
    /// Component-level diagram algebra relations
    Diagram(VerifySitesArgs),
    /// Functional relation of the Temperley-Lieb ansatz
    Funcrel(VerifyParamArgs),
    /// Dynamical Yang-Baxter equation
    Ybe(VerifyYbeArgs),
    /// Two-parameter dynamical Yang-Baxter equation (BMW route)
    Ybe2(VerifyYbe2Args),
}

#[derive(Args, Debug)]
pub struct VerifyFamilyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// User-supplied family file (JSON interchange format)
    #[arg(long, conflicts_with_all = ["graph", "graph_file", "line"])]
    pub family_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifySitesArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Number of tensor legs N
    #[arg(long, default_value_t = 3)]
    pub sites: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// qbar phase for the Hecke route (Murphy): defaults to exp(i pi / h)
    #[arg(long)]
    pub qbar_arg: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyHeckeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// qbar phase angle; defaults to pi/h so that qbar + qbar^-1 = kappa
    #[arg(long)]
    pub qbar_arg: Option<f64>,
    #[arg(long, default_value_t = 1e-11)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyBmwArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// User-supplied BMW family file
    #[arg(long, conflicts_with_all = ["graph", "graph_file", "line"])]
    pub family_file: Option<PathBuf>,
    #[arg(long)]
    pub qbar_arg: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyParamArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Spectral parameterization: tri | hyp | rational
    #[arg(long, default_value = "tri")]
    pub param: String,
    /// Override lambda instead of deriving it from kappa; lets the checker
    /// decide validity of any (family, parameterization) combination
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyYbeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Spectral parameterization: tri | hyp | rational | abf
    #[arg(long, default_value = "tri")]
    pub param: String,
    /// Override lambda instead of deriving it from kappa
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Spectral point z; omit to sweep the default 20-point grid
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Spectral point w
    #[arg(long, allow_negative_numbers = true)]
    pub w: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyYbe2Args {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub qbar_arg: Option<f64>,
    #[arg(long)]
    pub u1: Option<f64>,
    #[arg(long)]
    pub u2: Option<f64>,
    #[arg(long)]
    pub u3: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TransferArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value = "tri")]
    pub param: String,
    /// Chain length N
    #[arg(long, default_value_t = 6)]
    pub sites: usize,
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    pub z: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub w: Option<f64>,
    /// Check [M(z), M(w)] = 0
    #[arg(long)]
    pub check_commute: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 6)]
    pub sites: usize,
    /// Diagonalize the Hamiltonian (cyclic Jacobi)
    #[arg(long)]
    pub diagonalize: bool,
    /// Write the spectrum as CSV (index,eigenvalue)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Tolerance profile: default | strict (10x tighter)
    #[arg(long, default_value = "default")]
    pub tol_profile: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Graphs {
            action: GraphsAction::List { json },
        } => commands::graphs_list(json),
        Command::Build(args) => commands::build(&args),
        Command::Verify { what } => match what {
            VerifyCmd::Tl(args) => commands::verify_tl(&args),
            VerifyCmd::Global(args) => commands::verify_global(&args),
            VerifyCmd::Hecke(args) => commands::verify_hecke(&args),
            VerifyCmd::Bmw(args) => commands::verify_bmw(&args),
            VerifyCmd::Murphy(args) => commands::verify_murphy(&args),
            VerifyCmd::Diagram(args) => commands::verify_diagram(&args),
            VerifyCmd::Funcrel(args) => commands::verify_funcrel(&args),
            VerifyCmd::Ybe(args) => commands::verify_ybe(&args),
            VerifyCmd::Ybe2(args) => commands::verify_ybe2(&args),
        },
        Command::Transfer(args) => commands::transfer(&args),
        Command::Chain(args) => commands::chain(&args),
        Command::Suite(args) => suite::run(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::NotBaxterizable(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
