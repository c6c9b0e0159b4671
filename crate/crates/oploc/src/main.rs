//! `oploc`: batch front end for finite operads and their localizations.

mod commands;
mod files;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{error_json, CliError, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "oploc", version, about = "Finite operads, hammock localization and tree hammocks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Strict,
    Expansion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Identity,
    Free,
}

#[derive(Args, Clone)]
pub struct OperadArgs {
    /// Operad file (catalog or explicit table).
    #[arg(long)]
    pub operad: PathBuf,
    /// Cut O(1) down to W; fails if that is not a suboperad.
    #[arg(long)]
    pub w_only: bool,
}

#[derive(Args, Clone)]
pub struct ThArgs {
    #[arg(long, default_value_t = 1)]
    pub arity: usize,
    #[arg(long, default_value_t = 0)]
    pub height: usize,
    #[arg(long, default_value_t = 3)]
    pub max_pieces: usize,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Identity)]
    pub boundary: BoundaryArg,
    /// Allow leaves that discard their input.
    #[arg(long)]
    pub unlabeled_leaves: bool,
    /// Also list hammocks that are not reduced.
    #[arg(long)]
    pub unreduced: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Verify the operad axioms of a table.
    CheckOperad {
        path: Option<PathBuf>,
        #[arg(long)]
        operad: Option<PathBuf>,
        #[arg(long)]
        w_only: bool,
    },
    /// The symmetric monoidal category of an operad.
    #[command(subcommand)]
    Smc(SmcCmd),
    /// Hammocks over the category of unary operations or over C_O.
    #[command(subcommand)]
    Dk(DkCmd),
    /// Tree hammocks.
    #[command(subcommand)]
    Th(ThCmd),
    /// Comparisons between the two localizations.
    #[command(subcommand)]
    Compare(CompareCmd),
    /// Algebras, free algebras, bar constructions and localized actions.
    #[command(subcommand)]
    Alg(AlgCmd),
}

#[derive(Subcommand)]
pub enum SmcCmd {
    /// `f` then `g`. A morphism `a → b` is written `c1|…|ca/p1,…,pb`: one
    /// operation per source object, then the 1-based images of the
    /// permutation of the `b` outputs.
    Compose {
        #[command(flatten)]
        operad: OperadArgs,
        f: String,
        g: String,
    },
    Tensor {
        #[command(flatten)]
        operad: OperadArgs,
        f: String,
        g: String,
    },
    /// Rebuild the operad from its category and compare hom-set sizes.
    Roundtrip {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, default_value_t = 3)]
        max_object: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CategoryArg {
    /// The one-object category of unary operations.
    Unary,
    /// The category C_O, truncated at `--max-object`.
    Smc,
}

#[derive(Subcommand)]
pub enum DkCmd {
    Enumerate {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, value_enum, default_value_t = CategoryArg::Unary)]
        category: CategoryArg,
        #[arg(long, default_value_t = 0)]
        source: usize,
        #[arg(long, default_value_t = 0)]
        target: usize,
        #[arg(long, default_value_t = 1)]
        max_object: usize,
        #[arg(long, default_value_t = 0)]
        height: usize,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
    Reduce {
        #[command(flatten)]
        operad: OperadArgs,
        hammock: PathBuf,
    },
    Compose {
        #[command(flatten)]
        operad: OperadArgs,
        left: PathBuf,
        right: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum ThCmd {
    Enumerate {
        #[command(flatten)]
        operad: OperadArgs,
        #[command(flatten)]
        bounds: ThArgs,
    },
    Reduce {
        #[command(flatten)]
        operad: OperadArgs,
        hammock: PathBuf,
    },
    /// Graft `right` into the leaf of `left` labeled `--slot` (1-based).
    Graft {
        #[command(flatten)]
        operad: OperadArgs,
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 1)]
        slot: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Expansion)]
        strategy: Strategy,
    },
    Face {
        #[command(flatten)]
        operad: OperadArgs,
        hammock: PathBuf,
        #[arg(long)]
        index: usize,
    },
    /// The two height-one hammocks showing that `w` becomes invertible.
    Witnesses {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long)]
        w: String,
    },
    /// Connected components of the height-0 hammocks within the bounds.
    Pi0 {
        #[command(flatten)]
        operad: OperadArgs,
        #[command(flatten)]
        bounds: ThArgs,
    },
}

#[derive(Subcommand)]
pub enum CompareCmd {
    /// For M_+: hammocks over the monoid against arity-one tree hammocks.
    MonoidBijection {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, default_value_t = 1)]
        height: usize,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
    /// R on composable pairs of hammocks 1 ⇝ 1 over C_O.
    Rfunctor {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, default_value_t = 0)]
        height: usize,
        #[arg(long, default_value_t = 2)]
        max_length: usize,
    },
    /// Pad each enumerated hammock to equal geodesics and reduce it back.
    PadRoundtrip {
        #[command(flatten)]
        operad: OperadArgs,
        #[command(flatten)]
        bounds: ThArgs,
    },
}

#[derive(Subcommand)]
pub enum AlgCmd {
    /// Both presentations of the algebra axioms.
    Check {
        #[command(flatten)]
        operad: OperadArgs,
        algebra: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_leaves: usize,
    },
    /// The free algebra on a based set, if it is finite within the bound.
    Free {
        #[command(flatten)]
        operad: OperadArgs,
        /// Comma separated, basepoint first.
        #[arg(long)]
        carrier: String,
        #[arg(long, default_value_t = 200)]
        max_elements: usize,
    },
    /// The bar construction B(P, O, X) along a map O → P.
    Bar {
        /// P.
        #[command(flatten)]
        operad: OperadArgs,
        /// O; the algebra is an O-algebra.
        #[arg(long)]
        inner: PathBuf,
        algebra: PathBuf,
        /// Operad map file; defaults to the identity or the map to a terminal P.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        height: usize,
        #[arg(long, default_value_t = 2)]
        max_leaves: usize,
    },
    /// Let height-0 tree hammocks act, checking invariance under reduction.
    Localize {
        #[command(flatten)]
        operad: OperadArgs,
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        max_pieces: usize,
    },
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = commands::name(&cli.command);
    let code = match commands::run(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")),
            };
            match emit(&cli, &text) {
                Ok(()) => report.exit_code(),
                Err(e) => {
                    eprintln!("oploc: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            eprintln!("oploc {name}: {e}");
            if cli.format == Format::Json {
                let text = format!("{}\n", serde_json::to_string_pretty(&error_json(&name, &e)).expect("reports serialize"));
                if let Err(e) = emit(&cli, &text) {
                    eprintln!("oploc: {e}");
                }
            }
            e.exit_code()
        }
    };
    ExitCode::from(code)
}
