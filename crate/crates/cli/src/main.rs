use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relserre_cli::config::{parse_suites, Format, Parabolics, SuiteConfig, DEFAULT_ROSTER, OPT_IN_SYSTEM};
use relserre_cli::{hecke_class_text, list_systems_text, normal_form_text, run, CliError};

#[derive(Parser)]
#[command(
    name = "relserre",
    version,
    about = "Exact checks of parabolic Serre duality in Hecke algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify {
        /// Comma-separated type names or datum files; defaults to the standard roster.
        #[arg(long, value_delimiter = ',')]
        systems: Vec<String>,
        /// `all`, or subsets like `1;1,2;-` (1-based, `-` is empty).
        #[arg(long, default_value = "all")]
        parabolics: String,
        /// Comma-separated: combinatorics, braid, hecke, serre, all.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// json or markdown.
        #[arg(long, default_value = "json")]
        format: String,
        /// Report path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 1_200_000)]
        max_group_order: usize,
        /// Add F4 to the default roster.
        #[arg(long)]
        with_f4: bool,
    },
    /// Print the Garside normal form of a braid word.
    Nf {
        #[arg(long)]
        system: String,
        /// Signed 1-based generators, e.g. "1 2 -1".
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Print the Hecke class of a braid word.
    HeckeClass {
        #[arg(long)]
        system: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// List built-in systems.
    ListSystems,
}

fn config_from_args(cmd: Command) -> Result<SuiteConfig, CliError> {
    let Command::Verify {
        systems,
        parabolics,
        suites,
        seed,
        format,
        output,
        jobs,
        max_group_order,
        with_f4,
    } = cmd
    else {
        unreachable!("only called for verify");
    };
    let mut systems = if systems.is_empty() {
        DEFAULT_ROSTER.iter().map(|s| s.to_string()).collect()
    } else {
        systems
    };
    if with_f4 && !systems.iter().any(|s| s == OPT_IN_SYSTEM) {
        systems.push(OPT_IN_SYSTEM.to_string());
    }
    Ok(SuiteConfig {
        systems,
        parabolics: parabolics.parse::<Parabolics>()?,
        suites: parse_suites(&suites)?,
        seed,
        format: format.parse::<Format>()?,
        output,
        jobs,
        max_group_order,
    })
}

fn verify(cmd: Command) -> Result<bool, CliError> {
    let config = config_from_args(cmd)?;
    let report = run(&config)?;
    let text = match config.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    match &config.output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Config(relserre_cli::config::ConfigError::DatumFile {
                path: path.clone(),
                reason: e.to_string(),
            })
        })?,
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!(
        "{} contexts, {} checks: {} passed, {} failed, {} findings",
        s.contexts, s.total, s.passed, s.failed, s.info
    );
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        cmd @ Command::Verify { .. } => verify(cmd),
        Command::Nf { system, word } => normal_form_text(&system, &word).map(|s| {
            println!("{s}");
            true
        }),
        Command::HeckeClass { system, word } => hecke_class_text(&system, &word).map(|s| {
            println!("{s}");
            true
        }),
        Command::ListSystems => {
            println!("{}", list_systems_text());
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
