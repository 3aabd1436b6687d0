mod commands;
mod error;
mod mtx;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use structsvd::projector::ProjectorSign;
use structsvd::StructureClass;

use commands::{ClassArg, GenerateArgs};

#[derive(Debug, Parser)]
#[command(name = "structsvd", version, about = "Structure-revealing SVDs of (skew-)(con)involutory matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the defining residual of every class.
    Classify {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        class: ClassArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Compute the structure-revealing SVD.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        class: ClassArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Directory for U.mtx, V.mtx, T.mtx and sigma.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random structured matrix with known ground truth.
    Generate {
        #[arg(long)]
        class: StructureClass,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        sigmas: Vec<f64>,
        #[arg(long)]
        eta1: Option<usize>,
        #[arg(long)]
        eta2: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phases: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for A.mtx and the ground-truth factors.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// SVD of the projector (I ± A)/2 of an involutory matrix.
    Project {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        sign: ProjectorSign,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every structural property against the tolerance.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        class: ClassArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Writes the report; a closed stdout is not an error worth panicking over.
fn emit(json: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{json}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (name, result) = match &cli.command {
        Command::Classify { file, class, tol } => ("classify", commands::classify_cmd(file, *class, *tol)),
        Command::Decompose { file, class, tol, out } => {
            ("decompose", commands::decompose_cmd(file, *class, *tol, out.as_deref()))
        }
        Command::Generate {
            class,
            n,
            nu,
            sigmas,
            eta1,
            eta2,
            phases,
            seed,
            out,
        } => (
            "generate",
            commands::generate_cmd(&GenerateArgs {
                class: *class,
                n: *n,
                nu: *nu,
                sigmas: sigmas.clone(),
                eta1: *eta1,
                eta2: *eta2,
                phases: phases.clone(),
                seed: *seed,
                out: out.clone(),
            }),
        ),
        Command::Project { file, sign, tol, out } => ("project", commands::project_cmd(file, *sign, *tol, out.as_deref())),
        Command::Verify { file, class, tol } => ("verify", commands::verify_cmd(file, *class, *tol)),
    };
    match result {
        Ok(outcome) => {
            emit(&outcome.json);
            if outcome.exit_code != 0 {
                eprintln!("{name}: residuals exceed the tolerance");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            emit(&commands::error_outcome(name, &err));
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
