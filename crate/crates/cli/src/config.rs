use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use relserre::coxeter::{BuildOptions, CoxeterDatum};
use relserre::{CoxeterError, CoxeterSystem, GenSet};
use serde::Serialize;
use thiserror::Error;

/// Systems checked when none are named.
pub const DEFAULT_ROSTER: [&str; 9] = ["A1", "A2", "A3", "A1xA1", "B2", "B3", "G2", "A4", "D4"];

/// Added to the default roster by `--with-f4`.
pub const OPT_IN_SYSTEM: &str = "F4";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown suite {0:?} (expected combinatorics, braid, hecke, serre or all)")]
    UnknownSuite(String),
    #[error("bad parabolic list {input:?}: {reason}")]
    BadParabolics { input: String, reason: String },
    #[error("parabolic {subset} does not fit system {system} of rank {rank}")]
    SubsetOutOfRange {
        subset: GenSet,
        system: String,
        rank: usize,
    },
    #[error("system {name}: {source}")]
    System { name: String, source: CoxeterError },
    #[error("cannot read datum file {path}: {reason}")]
    DatumFile { path: PathBuf, reason: String },
    #[error("unknown format {0:?} (expected json or markdown)")]
    UnknownFormat(String),
    #[error("no systems selected")]
    EmptyRoster,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Combinatorics,
    Braid,
    Hecke,
    Serre,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Combinatorics, Suite::Braid, Suite::Hecke, Suite::Serre];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Braid => "braid",
            Suite::Hecke => "hecke",
            Suite::Serre => "serre",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Comma-separated suite names; `all` selects every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "all" => out.extend(Suite::ALL),
            _ => {
                let suite = Suite::ALL
                    .into_iter()
                    .find(|x| x.name() == part)
                    .ok_or_else(|| ConfigError::UnknownSuite(part.to_string()))?;
                out.push(suite);
            }
        }
    }
    if out.is_empty() {
        return Err(ConfigError::UnknownSuite(s.to_string()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parabolics {
    All,
    Explicit(Vec<GenSet>),
}

impl Parabolics {
    /// Subsets for a system of the given rank, in increasing bitmask order.
    pub fn subsets(&self, system: &str, rank: usize) -> Result<Vec<GenSet>, ConfigError> {
        match self {
            Parabolics::All => Ok(GenSet::all_subsets(rank).collect()),
            Parabolics::Explicit(list) => {
                let full = GenSet::full(rank);
                if let Some(&bad) = list.iter().find(|s| !s.is_subset(full)) {
                    return Err(ConfigError::SubsetOutOfRange {
                        subset: bad,
                        system: system.to_string(),
                        rank,
                    });
                }
                Ok(list.clone())
            }
        }
    }
}

impl fmt::Display for Parabolics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parabolics::All => f.write_str("all"),
            Parabolics::Explicit(list) => {
                let parts: Vec<String> = list.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join(";"))
            }
        }
    }
}

/// `all`, or `;`-separated subsets of 1-based generator indices such as
/// `1;1,2;-`, where `-` is the empty subset.
impl FromStr for Parabolics {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = |reason: &str| ConfigError::BadParabolics {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        if s == "all" {
            return Ok(Parabolics::All);
        }
        let mut out = Vec::new();
        for part in s.split(';').map(str::trim) {
            if part == "-" {
                out.push(GenSet::empty());
                continue;
            }
            if part.is_empty() {
                return Err(bad("empty subset; write `-` for the empty set"));
            }
            let mut set = GenSet::empty();
            for tok in part.split(',').map(str::trim) {
                let i: usize = tok
                    .parse()
                    .map_err(|_| bad("generator indices must be positive integers"))?;
                if i == 0 || i > GenSet::MAX_RANK {
                    return Err(bad("generator index out of range"));
                }
                set.insert(i - 1);
            }
            out.push(set);
        }
        out.sort();
        out.dedup();
        Ok(Parabolics::Explicit(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(ConfigError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Named types (`A3`, `A1xA1`, …) or paths to JSON/TOML datum files.
    pub systems: Vec<String>,
    pub parabolics: Parabolics,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Worker threads; 0 lets the thread pool decide.
    pub jobs: usize,
    pub max_group_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            systems: DEFAULT_ROSTER.iter().map(|s| s.to_string()).collect(),
            parabolics: Parabolics::All,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            format: Format::Json,
            output: None,
            jobs: 0,
            max_group_order: BuildOptions::default().max_group_order,
        }
    }
}

impl SuiteConfig {
    pub fn build_options(&self) -> BuildOptions {
        BuildOptions {
            max_group_order: self.max_group_order,
            ..BuildOptions::default()
        }
    }
}

fn looks_like_path(spec: &str) -> bool {
    spec.contains('/') || spec.ends_with(".json") || spec.ends_with(".toml") || Path::new(spec).is_file()
}

/// Reads a datum file; the format follows the extension, defaulting to JSON.
pub fn read_datum(path: &Path) -> Result<CoxeterDatum, ConfigError> {
    let err = |reason: String| ConfigError::DatumFile {
        path: path.to_path_buf(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| err(e.to_string()))
    } else {
        serde_json::from_str(&text).map_err(|e| err(e.to_string()))
    }
}

/// Builds a system from a type name or a datum file path, and enumerates it.
pub fn load_system(spec: &str, options: BuildOptions) -> Result<CoxeterSystem, ConfigError> {
    let sys = if looks_like_path(spec) {
        let datum = read_datum(Path::new(spec))?;
        let name = datum.name.clone();
        CoxeterSystem::with_options(name.clone(), datum.bond_matrix, options)
            .map_err(|source| ConfigError::System { name, source })?
    } else {
        CoxeterSystem::named_with_options(spec, options).map_err(|source| ConfigError::System {
            name: spec.to_string(),
            source,
        })?
    };
    sys.table().map_err(|source| ConfigError::System {
        name: sys.name().to_string(),
        source: source.clone(),
    })?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_syntax() {
        let p: Parabolics = "1;1,2;-".parse().unwrap();
        let expected = vec![GenSet::empty(), GenSet::single(0), GenSet::from_bits(0b11)];
        assert_eq!(p, Parabolics::Explicit(expected));
        assert_eq!(p.to_string(), "{};{1};{1,2}");
        assert_eq!("all".parse::<Parabolics>().unwrap(), Parabolics::All);
        for bad in ["", "0", "1;;2", "x", "1,a"] {
            assert!(bad.parse::<Parabolics>().is_err(), "{bad}");
        }
        assert!(matches!(
            "3".parse::<Parabolics>().unwrap().subsets("A2", 2),
            Err(ConfigError::SubsetOutOfRange { .. })
        ));
        assert_eq!(Parabolics::All.subsets("A1", 1).unwrap().len(), 2);
    }

    #[test]
    fn suite_syntax() {
        assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(
            parse_suites("serre,braid,serre").unwrap(),
            vec![Suite::Braid, Suite::Serre]
        );
        assert!(parse_suites("nope").is_err());
        assert!(parse_suites("").is_err());
    }

    #[test]
    fn datum_files() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let json = dir.join("b2.json");
        std::fs::write(&json, r#"{"name": "my-B2", "bond_matrix": [[1, 4], [4, 1]]}"#).unwrap();
        let toml_path = dir.join("a2.toml");
        std::fs::write(&toml_path, "name = \"my-A2\"\nbond_matrix = [[1, 3], [3, 1]]\n").unwrap();
        let b2 = load_system(json.to_str().unwrap(), BuildOptions::default()).unwrap();
        assert_eq!((b2.name(), b2.order().unwrap()), ("my-B2", 8));
        let a2 = load_system(toml_path.to_str().unwrap(), BuildOptions::default()).unwrap();
        assert_eq!(a2.order().unwrap(), 6);
        let broken = dir.join("bad.json");
        std::fs::write(&broken, r#"{"name": "x", "bond_matrix": [[1, 3], [4, 1]]}"#).unwrap();
        assert!(matches!(
            load_system(broken.to_str().unwrap(), BuildOptions::default()),
            Err(ConfigError::System { .. })
        ));
        assert!(matches!(
            load_system("missing/file.json", BuildOptions::default()),
            Err(ConfigError::DatumFile { .. })
        ));
    }
}
