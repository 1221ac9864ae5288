use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::Serialize;

use crate::diagram::{parse_pd, Orientation};
use crate::lattice::DEFAULT_RANK_LIMIT;
use crate::polynomial::{frac, DEFAULT_BRACKET_BUDGET};
use crate::qa::DEFAULT_QA_BUDGET;
use crate::surfaces::signature_gl;

use super::pipeline::lattice_paths;
use super::VerifyError;

/// Environment variable read for the worker count.
pub const WORKERS_ENV: &str = "QALINK_WORKERS";

/// Right-handed trefoil used to pin the orientation convention.
pub const ANCHOR_PD: &str = "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// How lattice correction terms are read as invariants of the branched
/// double cover. `Standard` takes a negative definite Goeritz lattice to
/// bound the cover; `Reversed` takes it to bound the cover with the
/// opposite orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Standard,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub max_crossings: Option<usize>,
    pub qa_budget: u64,
    pub bracket_budget: u64,
    pub rank_limit: usize,
    /// `None` uses every core.
    pub workers: Option<usize>,
    pub format: OutputFormat,
    /// When locked, every run first checks the trefoil anchor and refuses to
    /// start if the convention moves it.
    pub anchor_locked: bool,
    pub convention: Convention,
}

impl RunConfig {
    pub fn new(corpus: impl Into<PathBuf>) -> Self {
        RunConfig {
            corpus: corpus.into(),
            max_crossings: None,
            qa_budget: DEFAULT_QA_BUDGET,
            bracket_budget: DEFAULT_BRACKET_BUDGET,
            rank_limit: DEFAULT_RANK_LIMIT,
            workers: None,
            format: OutputFormat::Json,
            anchor_locked: true,
            convention: Convention::Standard,
        }
    }

    /// Applies `key = value` lines; blank lines and `#` comments are ignored.
    ///
    /// Keys: `corpus`, `max_crossings` (a number or `none`), `qa_budget`,
    /// `bracket_budget`, `rank_limit`, `workers` (a number or `auto`),
    /// `format` (`json`/`csv`), `anchor` (`locked`/`unlocked`),
    /// `convention` (`standard`/`reversed`).
    pub fn apply_text(&mut self, text: &str) -> Result<(), VerifyError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                VerifyError::Config(format!("line {}: expected key = value", i + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), VerifyError> {
        let text = std::fs::read_to_string(path).map_err(|e| VerifyError::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), VerifyError> {
        let bad = || VerifyError::Config(format!("bad value `{value}` for `{key}`"));
        let num = |v: &str| v.parse::<u64>().map_err(|_| bad());
        match key {
            "corpus" => self.corpus = PathBuf::from(value),
            "max_crossings" => {
                self.max_crossings = if value == "none" {
                    None
                } else {
                    Some(num(value)? as usize)
                }
            }
            "qa_budget" => self.qa_budget = num(value)?,
            "bracket_budget" => self.bracket_budget = num(value)?,
            "rank_limit" => self.rank_limit = num(value)? as usize,
            "workers" => {
                self.workers = if value == "auto" {
                    None
                } else {
                    Some(num(value)? as usize)
                }
            }
            "format" => {
                self.format = match value {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(bad()),
                }
            }
            "anchor" => {
                self.anchor_locked = match value {
                    "locked" => true,
                    "unlocked" => false,
                    _ => return Err(bad()),
                }
            }
            "convention" => {
                self.convention = match value {
                    "standard" => Convention::Standard,
                    "reversed" => Convention::Reversed,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(VerifyError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Trefoil anchor: the right-handed trefoil has signature -2 and its
    /// branched double cover has Spin correction term 1/2. Only enforced
    /// when the anchor is locked.
    pub fn check_anchor(&self) -> Result<(), VerifyError> {
        if !self.anchor_locked {
            return Ok(());
        }
        let d = parse_pd(ANCHOR_PD)?;
        let o = Orientation::default_for(&d);
        let sigma = signature_gl(&d, &o).map_err(|e| VerifyError::Anchor(e.to_string()))?;
        if sigma != -2 {
            return Err(VerifyError::Anchor(format!(
                "trefoil signature {sigma}, expected -2"
            )));
        }
        let paths = lattice_paths(&d, self).map_err(|e| VerifyError::Anchor(e.to_string()))?;
        let want: Vec<BigRational> = vec![frac(1, 2)];
        for p in &paths {
            if p.spin != want {
                return Err(VerifyError::Anchor(format!(
                    "trefoil Spin correction terms {} from the {:?} coloring, expected 1/2",
                    super::qlist(&p.spin),
                    p.coloring
                )));
            }
        }
        if paths.is_empty() {
            return Err(VerifyError::Anchor(
                "trefoil has no definite coloring".into(),
            ));
        }
        Ok(())
    }
}
