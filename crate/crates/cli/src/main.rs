use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Envelope};

#[derive(Debug, Parser)]
#[command(name = "cstar", version, about = "Structure of finite-dimensional C*-algebras and TROs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "CSTAR_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Membership / certificate residual tolerance.
    #[arg(long, global = true)]
    pub tol_member: Option<f64>,

    /// Self-adjointness and spectral tolerance.
    #[arg(long, global = true)]
    pub tol_spec: Option<f64>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Wedderburn blocks, socle and unit partition of the generated algebra.
    Decompose { input: PathBuf },
    /// Projection generator of the right ideal given by `ideal_generators`.
    Ideal { input: PathBuf },
    /// Classify the generated TRO as a sum of rectangular blocks.
    TroClassify { input: PathBuf },
    /// Sample maximal right ideals and certify each one.
    VerifyDz {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Run the seeded property suite.
    Selftest,
    /// Emit a planted instance with its ground truth.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Algebra,
    Tro,
}

#[derive(Debug, Clone, Args)]
pub struct RandomArgs {
    pub kind: Kind,
    /// Block sizes `2,1` for algebras, shapes `2x3,1x1` for TROs.
    #[arg(long, value_delimiter = ',', required = true)]
    pub blocks: Vec<String>,
    /// Multiplicity per block (default 1 each).
    #[arg(long, value_delimiter = ',')]
    pub mult: Vec<usize>,
    /// Extra zero dimensions in the ambient space (algebras only).
    #[arg(long, default_value_t = 0)]
    pub pad: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global.clone();
    let result = match cli.command {
        Command::Decompose { input } => commands::decompose(&g, &input),
        Command::Ideal { input } => commands::ideal(&g, &input),
        Command::TroClassify { input } => commands::tro_classify(&g, &input),
        Command::VerifyDz { input, trials } => commands::verify_dz(&g, &input, trials),
        Command::Selftest => commands::selftest(&g),
        Command::Random(args) => commands::random(&g, &args),
    };
    match result {
        Ok(envelope) => finish(&g, &envelope),
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn finish(g: &GlobalArgs, envelope: &Envelope) -> ExitCode {
    let mut text = serde_json::to_string_pretty(&envelope.body).expect("report serializes");
    text.push('\n');
    let written = match &g.json {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    match &envelope.failure {
        None => ExitCode::SUCCESS,
        Some(invariant) => {
            eprintln!("verification failed: {invariant}");
            ExitCode::from(2)
        }
    }
}
