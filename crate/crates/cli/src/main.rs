use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use parsmash::parcoh::CheckMode;
use parsmash::FieldKind;
use parsmash_cli::input::{HochschildOf, InputError, ProblemSpec, TaskKind, TaskSpec};
use parsmash_cli::{execute, output, Flags};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Validate,
    Smash,
    Kpar,
    Hpar,
    Hochschild,
    SpectralCheck,
    Orthogonalize,
    /// Every task listed in the file.
    Run,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Checks {
    Strict,
    Warn,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Of {
    Base,
    Smash,
    Kpar,
}

/// Partial actions, partial smash products and their cohomology over exact fields.
#[derive(Parser, Debug)]
#[command(name = "parsmash", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem file (JSON).
    input: PathBuf,
    /// Field override: Q, F2, F_3, GF(5), ...
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Resource caps, e.g. `group_order=24,cochain_dim=50000`.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, value_enum)]
    checks: Option<Checks>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include per-phase wall times (the report is then not reproducible byte for byte).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    bimodule: Option<String>,
    #[arg(long, value_enum)]
    of: Option<Of>,
    #[arg(long)]
    seed: Option<u64>,
}

fn input_error(e: &InputError) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({"error": {"path": e.path, "message": e.message}})
    );
    ExitCode::from(2)
}

fn run(cli: &Cli) -> Result<(String, bool), InputError> {
    let text = std::fs::read_to_string(&cli.input)
        .map_err(|e| InputError::new(cli.input.display().to_string(), e.to_string()))?;
    let spec = ProblemSpec::parse_str(&text)?;
    let field = cli
        .field
        .as_deref()
        .map(|s| FieldKind::parse(s).map_err(|e| InputError::new("--field", e.to_string())))
        .transpose()?;
    let flags = Flags {
        field,
        max_degree: cli.max_degree,
        budget: cli.budget.clone(),
        checks: cli.checks.map(|c| match c {
            Checks::Strict => CheckMode::Strict,
            Checks::Warn => CheckMode::Warn,
        }),
        module: cli.module.clone(),
        bimodule: cli.bimodule.clone(),
        of: cli.of.map(|o| match o {
            Of::Base => HochschildOf::Base,
            Of::Smash => HochschildOf::Smash,
            Of::Kpar => HochschildOf::Kpar,
        }),
        seed: cli.seed,
        timings: cli.timings,
    };
    let kind = match cli.command {
        Command::Run => None,
        Command::Validate => Some(TaskKind::Validate),
        Command::Smash => Some(TaskKind::Smash),
        Command::Kpar => Some(TaskKind::Kpar),
        Command::Hpar => Some(TaskKind::Hpar),
        Command::Hochschild => Some(TaskKind::Hochschild),
        Command::SpectralCheck => Some(TaskKind::SpectralCheck),
        Command::Orthogonalize => Some(TaskKind::Orthogonalize),
    };
    let tasks: Vec<TaskSpec> = match kind {
        None if spec.tasks.is_empty() => {
            return Err(InputError::new(
                "$.tasks",
                "`run` needs a nonempty task list",
            ))
        }
        None => spec.tasks.clone(),
        Some(k) => {
            let listed: Vec<TaskSpec> =
                spec.tasks.iter().filter(|t| t.kind == k).cloned().collect();
            if listed.is_empty() {
                vec![TaskSpec::bare(k)]
            } else {
                listed
            }
        }
    };
    let env = std::env::var("PARSMASH_BUDGET").ok();
    let result = execute(&spec, &tasks, &flags, env.as_deref())?;
    let text = match cli.format {
        Format::Json => output::canonical_json(&result.document),
        Format::Tsv => output::tsv(&result.document),
    };
    Ok((text, result.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(e) => input_error(&e),
        Ok((text, passed)) => {
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        return input_error(&InputError::new("--out", e.to_string()));
                    }
                }
                None => print!("{text}"),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
