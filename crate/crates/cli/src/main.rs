mod args;
mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use args::{Cli, Command, Output};
use clap::Parser;
use qgt_core::{AlgebraError, Error, FieldDescriptor};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Core(Error::Io(_)) => 1,
            CliError::Core(Error::Algebra(
                AlgebraError::CapExceeded { .. } | AlgebraError::InfiniteDimensional { .. },
            )) => 3,
            _ => 2,
        }
    }
}

/// Global flags shared by every command.
pub struct Settings {
    pub field: Option<FieldDescriptor>,
    pub seed: u64,
    pub bound: usize,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let settings = Settings {
        field: cli.field,
        seed: cli.seed,
        bound: cli.bound as usize,
    };
    let rendered = match &cli.command {
        Command::Validate { paths } => {
            let (r, err) = commands::validate(paths);
            print!("{}", r.pick(cli.output));
            return match err {
                Some(e) => Err(e),
                None => Ok(String::new()),
            };
        }
        Command::Generate { family, out, dsl } => {
            let r = commands::generate(&settings, family, out.as_deref(), dsl.as_deref())?;
            if out.is_some() && cli.output == Output::Json {
                return Ok(String::new());
            }
            r
        }
        Command::Analyze {
            source,
            report,
            all,
            trials,
        } => commands::analyze(&settings, source, report.as_deref(), *all, *trials)?,
        Command::Resolve { source, vertex } => commands::resolve(&settings, source, vertex.as_deref())?,
        Command::Surface { action } => commands::surface(action)?,
        Command::ExportDot { path, out } => {
            let r = commands::export(path, out.as_deref())?;
            if out.is_some() {
                return Ok(String::new());
            }
            r
        }
    };
    Ok(rendered.pick(cli.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("qgt: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qgt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
