//! The `hopf-forge` command line: definition-file ingestion, the verification
//! pipelines, and report emission.
//!
//! Exit codes: 0 when every mandatory check passes, 1 on a verification
//! failure (the report is still written), 2 on usage or parse errors, 3 when
//! two independent computations disagree.

mod pair;
pub mod report;
mod structure;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::definition::{Body, DefError, DefinitionFile};
use crate::fixtures;
use crate::presentations::presets;
use crate::scalars::{ScalarError, SpecPoints};

pub use report::{Check, Outcome, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "hopf-forge", version, about = "Exact construction and verification of algebraic quantum groups")]
pub struct Cli {
    /// Degree bound for presentation computations
    #[arg(long, global = true)]
    pub degree: Option<usize>,

    /// Comma-separated rationals in (0, 1) at which positivity is certified
    #[arg(long, global = true)]
    pub spec_points: Option<String>,

    /// Report positivity failures without failing the run
    #[arg(long, global = true)]
    pub no_star_assert: bool,

    /// Where to write the report (for `dual`: the dual definition file)
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hopf axiom suite: T-maps, unique ε and S, star compatibility
    Validate { input: String },
    /// Haar functional, modular data, positivity and eigenvalue suite
    Analyze { input: String },
    /// Build the dual quantum group and check biduality
    Dual { input: String },
    /// Sub-quantum-group checks and the dual imbedding
    Subcheck { input: String },
    /// The U_q(su(2)) / SU_q(2) pairing suite
    Pair { input: String },
    /// List the builtin fixtures and presets, optionally writing them out
    Examples {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{input}: {source}")]
    Definition { input: String, source: DefError },
    #[error("--spec-points: {0}")]
    SpecPoints(ScalarError),
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Settings shared by every command.
pub struct Settings {
    pub points: SpecPoints,
    pub degree: Option<usize>,
    pub star_assert: bool,
}

/// A loaded input: its display name, raw bytes, and parsed definition.
pub struct Input {
    pub name: String,
    pub bytes: Vec<u8>,
    pub def: DefinitionFile,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => r,
        Err(e) => Run { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn execute(cli: &Cli) -> Result<Run, CliError> {
    let settings = Settings {
        points: spec_points(cli.spec_points.as_deref())?,
        degree: cli.degree,
        star_assert: !cli.no_star_assert,
    };
    let report = match &cli.command {
        Command::Examples { emit } => return examples(emit.as_deref()),
        Command::Validate { input } => {
            let input = load(input)?;
            match &input.def.body {
                Body::StructureConstants(_) => structure::validate(&input, &settings),
                Body::Presentation(_) => pair::validate(&input, &settings),
            }
        }
        Command::Analyze { input } => structure::analyze(&structure_input(input)?, &settings),
        Command::Subcheck { input } => structure::subcheck(&structure_input(input)?, &settings),
        Command::Dual { input } => {
            let input = structure_input(input)?;
            let (report, dual) = structure::dual(&input, &settings);
            if let (Some(path), Some(def)) = (&cli.output, dual) {
                let text = def
                    .to_canonical_string()
                    .map_err(|source| CliError::Definition { input: input.name.clone(), source })?;
                write(path, &text)?;
            }
            return Ok(finish(&report, cli.format, None));
        }
        Command::Pair { input } => {
            if input != "pairing-uqsu2-suq2" {
                return Err(CliError::Usage(format!("`pair` expects the preset pairing-uqsu2-suq2, got {input}")));
            }
            pair::pair(&settings)
        }
    };
    if let Some(path) = &cli.output {
        write(path, &render(&report, cli.format))?;
        return Ok(finish(&report, cli.format, Some(path)));
    }
    Ok(finish(&report, cli.format, None))
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

fn finish(report: &Report, format: Format, written: Option<&Path>) -> Run {
    let stdout = match written {
        Some(p) => format!("report written to {}; outcome {}\n", p.display(), report.outcome.as_str()),
        None => render(report, format),
    };
    Run { code: report.outcome.exit_code(), stdout, stderr: String::new() }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// `--spec-points`, then `HOPF_FORGE_SPEC_POINTS`, then `{1/3, 1/2, 2/3}`.
pub fn spec_points(flag: Option<&str>) -> Result<SpecPoints, CliError> {
    let env = std::env::var(SpecPoints::ENV_VAR).ok();
    match flag.or(env.as_deref()) {
        Some(text) => SpecPoints::parse_list(text).map_err(CliError::SpecPoints),
        None => Ok(SpecPoints::default()),
    }
}

/// A path that exists is read from disk; otherwise the name of a builtin
/// fixture or preset, whose canonical text stands in for the file bytes.
pub fn load(input: &str) -> Result<Input, CliError> {
    let path = Path::new(input);
    let bytes = if path.exists() {
        std::fs::read(path).map_err(|e| CliError::Io { path: input.into(), message: e.to_string() })?
    } else if let Some(def) = fixtures::fixture(input).or_else(|| presets::definition(input)) {
        let text = def.to_canonical_string().map_err(|source| CliError::Definition { input: input.into(), source })?;
        text.into_bytes()
    } else {
        return Err(CliError::Usage(format!("{input}: no such file, fixture or preset")));
    };
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Io { path: input.into(), message: "not UTF-8".into() })?;
    let def = DefinitionFile::parse(&text).map_err(|source| CliError::Definition { input: input.into(), source })?;
    Ok(Input { name: input.into(), bytes, def })
}

fn structure_input(input: &str) -> Result<Input, CliError> {
    let input = load(input)?;
    match input.def.body {
        Body::StructureConstants(_) => Ok(input),
        Body::Presentation(_) => {
            Err(CliError::Usage(format!("{}: this command needs a structure-constants definition", input.name)))
        }
    }
}

fn examples(emit: Option<&Path>) -> Result<Run, CliError> {
    let mut out = String::new();
    let defs = fixtures::NAMES
        .iter()
        .map(|n| fixtures::fixture(n).expect("listed fixture"))
        .chain(presets::NAMES.iter().filter_map(|n| presets::definition(n)));
    for def in defs {
        let kind = match def.body {
            Body::StructureConstants(_) => "structure-constants",
            Body::Presentation(_) => "presentation",
        };
        out += &format!("{:<18} {:<19} {}\n", def.name, kind, def.description);
        if let Some(dir) = emit {
            let text =
                def.to_canonical_string().map_err(|source| CliError::Definition { input: def.name.clone(), source })?;
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Io { path: dir.display().to_string(), message: e.to_string() })?;
            write(&dir.join(format!("{}.qg", def.name)), &text)?;
        }
    }
    out += &format!(
        "{:<18} {:<19} {}\n",
        "pairing-uqsu2-suq2", "pairing", "the pairing of uq-su2 with suq2 (command `pair`)"
    );
    Ok(Run { code: 0, stdout: out, stderr: String::new() })
}
