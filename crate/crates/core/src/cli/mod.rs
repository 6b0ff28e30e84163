//! Batch driver behind `qfock-lab`: a TOML/JSON run configuration, one
//! command per report family, deterministic CSV/JSON output.

mod commands;
mod output;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use commands::{
    cmd_commutators, cmd_conjugate, cmd_gram, cmd_moments, cmd_validate, cmd_xi, EtaFile,
    EtaTerm,
};
pub use output::{write_atomic, write_table, Format, Header, Table, TOOL_VERSION};

use crate::combinatorics::SubspaceSpec;
use crate::error::{Error, Result};
use crate::qfock::{Caps, FockParams};
use crate::scalar::{parse_rational, serde_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gram,
    Commutators,
    Xi,
    Moments,
    Conjugate,
    Validate,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Gram,
        Command::Commutators,
        Command::Xi,
        Command::Moments,
        Command::Conjugate,
        Command::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Gram => "gram",
            Command::Commutators => "commutators",
            Command::Xi => "xi",
            Command::Moments => "moments",
            Command::Conjugate => "conjugate",
            Command::Validate => "validate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, deserialize_with = "serde_rational::vec::deserialize")]
    pub q: Vec<Rational>,
    #[serde(rename = "N", default)]
    pub n: Vec<usize>,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_formats")]
    pub format: Vec<Format>,
    /// Worker threads for the grid; `None` uses the rayon default.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub moments: MomentsConfig,
    #[serde(default)]
    pub conjugate: ConjugateConfig,
    #[serde(default)]
    pub validate: ValidateConfig,
}

fn default_depth() -> usize {
    4
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MomentsConfig {
    /// Longest word checked against the pair-partition oracle.
    pub max_length: usize,
    pub colors: usize,
    /// q-Catalan polynomials for `k = 1..=catalan_max`.
    pub catalan_max: usize,
}

impl Default for MomentsConfig {
    fn default() -> Self {
        Self {
            max_length: 6,
            colors: 2,
            catalan_max: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConjugateConfig {
    /// Defaults to `depth - 2`.
    pub degree_cap: Option<usize>,
    #[serde(deserialize_with = "serde_rational::vec::deserialize")]
    pub epsilon: Vec<Rational>,
    /// Explicit `eta` as elementary tensors of polynomials, solved in
    /// addition to the dual-system `eta`.
    pub eta_file: Option<PathBuf>,
}

impl Default for ConjugateConfig {
    fn default() -> Self {
        Self {
            degree_cap: None,
            epsilon: vec![Rational::from_integer(1.into())],
            eta_file: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    DimDistance,
    AtomKernel,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub k: usize,
    pub n: usize,
    pub subspace: SubspaceSpec,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateConfig {
    pub suites: Vec<Suite>,
    /// Number of seeded dimension/distance instances.
    pub generated: usize,
    pub seed: u64,
    pub k_max: usize,
    pub n_max: usize,
    pub atom_k_max: usize,
    pub instances: Vec<Instance>,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        Self {
            suites: vec![Suite::DimDistance, Suite::AtomKernel],
            generated: 24,
            seed: 0,
            k_max: 3,
            n_max: 3,
            atom_k_max: 5,
            instances: Vec::new(),
        }
    }
}

/// Command-line values that replace the config file's.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub q: Option<String>,
    pub n: Option<String>,
    pub depth: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_str_with_ext(text: &str, json: bool) -> Result<Self> {
        let cfg: RunConfig = if json {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        };
        Ok(cfg)
    }

    /// `.json` files are JSON, everything else TOML. Relative paths inside
    /// the file are resolved against its directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let json = path.extension().is_some_and(|e| e == "json");
        let mut cfg = Self::from_str_with_ext(&text, json)?;
        // Paths in a config are relative to the config file.
        if let Some(base) = path.parent() {
            if cfg.out.is_relative() {
                cfg.out = base.join(&cfg.out);
            }
            if let Some(f) = &cfg.conjugate.eta_file {
                if f.is_relative() {
                    cfg.conjugate.eta_file = Some(base.join(f));
                }
            }
        }
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(q) = &o.q {
            self.q = split_list(q)
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Config(format!("--q: {e}")))?;
        }
        if let Some(n) = &o.n {
            self.n = split_list(n)
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|e| Error::Config(format!("--N {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
        }
        if let Some(d) = o.depth {
            self.depth = d;
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        if let Some(f) = o.format {
            self.format = vec![f];
        }
        Ok(())
    }

    /// Every `(q, N)` point, q-major, in config order.
    pub fn grid(&self) -> Result<Vec<FockParams>> {
        if self.q.is_empty() || self.n.is_empty() {
            return Err(Error::Config("q and N lists must be non-empty".into()));
        }
        let mut out = Vec::with_capacity(self.q.len() * self.n.len());
        for q in &self.q {
            for &n in &self.n {
                let p = FockParams::new(q.clone(), n, self.depth)
                    .map_err(|e| Error::Config(e.to_string()))?;
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn validate(&self, cmd: Command) -> Result<()> {
        if self.format.is_empty() {
            return Err(Error::Config("at least one output format is required".into()));
        }
        match cmd {
            Command::Gram | Command::Commutators | Command::Xi | Command::Conjugate => {
                self.grid().map(|_| ())
            }
            Command::Moments => {
                if self.q.is_empty() {
                    return Err(Error::Config("q list must be non-empty".into()));
                }
                for q in &self.q {
                    FockParams::new(q.clone(), 1, 0).map_err(|e| Error::Config(e.to_string()))?;
                }
                if self.moments.colors == 0 {
                    return Err(Error::Config("moments.colors must be positive".into()));
                }
                Ok(())
            }
            Command::Validate => Ok(()),
        }
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

/// A check that did not hold, as listed in `failures.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub command: &'static str,
    pub table: String,
    pub check: String,
    pub detail: String,
}

/// Tables and failures from one grid point (or the whole run for the
/// commands without a grid).
#[derive(Clone, Debug, Default)]
pub struct PointReport {
    pub tables: Vec<Table>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub failures: Vec<Failure>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `cmd` and writes its reports to `<out>/<command>/`, ending with
/// `failures.json` (an empty list when every check held).
pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate(cmd)?;
    let dir = cfg.out.join(cmd.name());
    let work = || -> Result<Vec<(Vec<PathBuf>, Vec<Failure>)>> {
        let emit = |r: PointReport| -> Result<(Vec<PathBuf>, Vec<Failure>)> {
            let mut files = Vec::new();
            for t in &r.tables {
                files.extend(write_table(&dir, t, &cfg.format)?);
            }
            Ok((files, r.failures))
        };
        match cmd {
            Command::Gram => par_grid(cfg, |p| cmd_gram(p, cfg), emit),
            Command::Commutators => par_grid(cfg, |p| cmd_commutators(p, cfg), emit),
            Command::Xi => par_grid(cfg, |p| cmd_xi(p, cfg), emit),
            Command::Conjugate => {
                let eta = match &cfg.conjugate.eta_file {
                    Some(path) => Some(EtaFile::from_file(path)?),
                    None => None,
                };
                par_grid(cfg, |p| cmd_conjugate(p, cfg, eta.as_ref()), emit)
            }
            Command::Moments => {
                let mut out: Vec<_> = cfg
                    .q
                    .par_iter()
                    .map(|q| cmd_moments(q, cfg).and_then(&emit))
                    .collect::<Result<_>>()?;
                out.push(emit(commands::catalan_table(cfg)?)?);
                Ok(out)
            }
            Command::Validate => Ok(vec![emit(cmd_validate(cfg)?)?]),
        }
    };
    let parts = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let mut outcome = Outcome::default();
    for (files, failures) in parts {
        outcome.files.extend(files);
        outcome.failures.extend(failures);
    }
    let path = dir.join("failures.json");
    let mut text = serde_json::to_string_pretty(&outcome.failures)
        .map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    write_atomic(&path, text.as_bytes())?;
    outcome.files.push(path);
    Ok(outcome)
}

fn par_grid<F, E>(cfg: &RunConfig, point: F, emit: E) -> Result<Vec<(Vec<PathBuf>, Vec<Failure>)>>
where
    F: Fn(&FockParams) -> Result<PointReport> + Sync,
    E: Fn(PointReport) -> Result<(Vec<PathBuf>, Vec<Failure>)> + Sync,
{
    cfg.grid()?
        .par_iter()
        .map(|p| point(p).and_then(&emit))
        .collect()
}
