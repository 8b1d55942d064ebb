//! Verification driver: builds the requested systems, runs the selected
//! suites over every (system, parabolic) pair and assembles a report.

pub mod config;
pub mod report;
pub mod suites;

use std::sync::Arc;

use rayon::prelude::*;
use relserre::coxeter::{named_bond_matrix, BuildOptions};
use relserre::garside::{BraidGroup, BraidWord, ParseBraidError};
use relserre::{CoxeterError, CoxeterSystem, GenSet, HeckeAlgebra, HeckeError};
use thiserror::Error;

use config::{load_system, ConfigError, Suite, SuiteConfig, DEFAULT_ROSTER, OPT_IN_SYSTEM};
use report::{Entry, Header, Report};
use suites::Subject;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Braid(#[from] ParseBraidError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("cannot build thread pool: {0}")]
    ThreadPool(String),
}

struct Unit {
    subject: usize,
    suite: Suite,
    subset: Option<GenSet>,
}

fn run_unit(subj: &Subject, unit: &Unit, seed: u64) -> Vec<Entry> {
    let results = match (unit.suite, unit.subset) {
        (Suite::Combinatorics, None) => suites::combinatorics_system(subj),
        (Suite::Combinatorics, Some(i)) => suites::combinatorics_context(subj, i),
        (Suite::Braid, None) => suites::braid_system(subj, seed),
        (Suite::Braid, Some(i)) => suites::braid_context(subj, i),
        (Suite::Hecke, None) => suites::hecke_system(subj, seed),
        (Suite::Serre, Some(i)) => suites::serre_context(subj, i, seed),
        (Suite::Hecke, Some(_)) | (Suite::Serre, None) => unreachable!("no such unit"),
    };
    let label = unit.subset.map(|i| i.to_string());
    results
        .into_iter()
        .map(|r| Entry::from_result(&subj.name, label.as_deref(), unit.suite, r))
        .collect()
}

/// Runs `verify`. Configuration problems are errors; mathematical failures
/// are reported as entries.
pub fn run(config: &SuiteConfig) -> Result<Report, CliError> {
    if config.systems.is_empty() {
        return Err(ConfigError::EmptyRoster.into());
    }
    let options = config.build_options();
    let subjects = config
        .systems
        .iter()
        .map(|spec| Ok(Subject::new(load_system(spec, options)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut units = Vec::new();
    let mut contexts = 0;
    for (k, subj) in subjects.iter().enumerate() {
        let subsets = config.parabolics.subsets(&subj.name, subj.sys.rank())?;
        contexts += subsets.len();
        for &suite in &config.suites {
            if suites::has_system_part(suite) {
                units.push(Unit {
                    subject: k,
                    suite,
                    subset: None,
                });
            }
            if suites::has_context_part(suite) {
                units.extend(subsets.iter().map(|&i| Unit {
                    subject: k,
                    suite,
                    subset: Some(i),
                }));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::ThreadPool(e.to_string()))?;
    let chunks: Vec<Vec<Entry>> = pool.install(|| {
        units
            .par_iter()
            .map(|u| run_unit(&subjects[u.subject], u, config.seed))
            .collect()
    });

    let header = Header {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        roster: subjects.iter().map(|s| s.name.clone()).collect(),
        parabolics: config.parabolics.to_string(),
        suites: config.suites.clone(),
    };
    Ok(Report::new(header, chunks.into_iter().flatten().collect(), contexts))
}

fn system_for(spec: &str) -> Result<Arc<CoxeterSystem>, CliError> {
    Ok(Arc::new(load_system(spec, BuildOptions::default())?))
}

/// Garside normal form of a braid word, e.g. `Δ^2 · []`.
pub fn normal_form_text(system: &str, word: &str) -> Result<String, CliError> {
    let word: BraidWord = word.parse()?;
    let g = BraidGroup::new(system_for(system)?)?;
    let nf = g.normal_form(&word)?;
    Ok(g.render(&nf))
}

/// Hecke class of a braid word in the canonical rendering.
pub fn hecke_class_text(system: &str, word: &str) -> Result<String, CliError> {
    let word: BraidWord = word.parse()?;
    let alg = HeckeAlgebra::new(system_for(system)?)?;
    Ok(alg.render(&alg.eval_braid(&word)?))
}

/// The default roster and the opt-in system with their ranks and orders.
pub fn list_systems_text() -> String {
    let mut lines = vec!["name\trank\torder\tdefault".to_string()];
    for name in DEFAULT_ROSTER.iter().chain([&OPT_IN_SYSTEM]) {
        let rank = named_bond_matrix(name).map(|m| m.len()).unwrap_or(0);
        let order = CoxeterSystem::named(name)
            .and_then(|s| s.order())
            .map(|o| o.to_string())
            .unwrap_or_else(|e| e.to_string());
        let default = if *name == OPT_IN_SYSTEM {
            "no (--with-f4)"
        } else {
            "yes"
        };
        lines.push(format!("{name}\t{rank}\t{order}\t{default}"));
    }
    lines.push(String::new());
    lines.push("Also accepted: A<n> (n>=1), B<n> (n>=2), D<n> (n>=4), G2, F4, products such as A2xA1, and JSON/TOML datum files with fields name and bond_matrix.".to_string());
    lines.join("\n")
}
