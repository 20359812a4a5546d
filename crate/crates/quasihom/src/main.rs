use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quasihom::commands::{self, CliError, Outcome};
use quasihom::problem::Problem;
use quasihom_core::spectrum::Exponent;

#[derive(Parser)]
#[command(name = "quasihom", version, about = "Weighted homogeneous generators of ideals invariant under contracting maps")]
struct Cli {
    /// Print a human-readable summary to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file (TOML).
    file: PathBuf,
    /// Write the JSON document here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Ordered spectrum, resonances, relation lattice and weights of the map.
    Spectrum(Common),
    /// Poincare-Dulac normal form with its conjugacy.
    NormalForm {
        #[command(flatten)]
        common: Common,
        /// Truncation degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Weighted homogeneous generators of the invariant ideal.
    QuasiHomogenize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<u32>,
        /// Exponent representing the class bound, e.g. `5,0`.
        #[arg(long, value_delimiter = ',')]
        class_bound: Option<Vec<u32>>,
    },
    /// Minimal embedding and the checks on the map.
    EmbedCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Re-verify a result or normal-form document.
    Certify {
        /// JSON document.
        file: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Problem, CliError> {
    Problem::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let out = |c: &Common, p: &Problem| c.output.clone().or_else(|| p.options.output.clone());
    Ok(match &cli.command {
        Command::Spectrum(c) => {
            let p = load(&c.file)?;
            (commands::spectrum(&p)?, out(c, &p))
        }
        Command::NormalForm { common, degree } => {
            let p = load(&common.file)?;
            (commands::normal_form(&p, *degree)?, out(common, &p))
        }
        Command::QuasiHomogenize { common, degree, class_bound } => {
            let p = load(&common.file)?;
            let bound = match class_bound {
                Some(v) if v.len() != p.dim() => {
                    return Err(CliError::Input(format!("--class-bound needs {} entries", p.dim())));
                }
                Some(v) => Some(Exponent::new(v.clone())),
                None => None,
            };
            let options = commands::qh_options(&p, *degree, bound);
            (commands::quasi_homogenize_cmd(&p, &options)?, out(common, &p))
        }
        Command::EmbedCheck { common, degree } => {
            let p = load(&common.file)?;
            (commands::embed_check(&p, *degree)?, out(common, &p))
        }
        Command::Certify { file } => (commands::certify(&read(file)?)?, None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, path)) => {
            if let Some(doc) = &outcome.document {
                match &path {
                    Some(p) => {
                        if let Err(e) = fs::write(p, doc) {
                            eprintln!("error: {}: {e}", p.display());
                            return ExitCode::from(1);
                        }
                    }
                    None => print!("{doc}"),
                }
            }
            if cli.verbose || outcome.document.is_none() {
                eprint!("{}", outcome.summary);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
