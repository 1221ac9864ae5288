//! Corpus sweeps: invariant reports, the signature/correction-term identity
//! and its Jones-polynomial corollary, certificates, and tabular output.
//!
//! Every link runs the same pipeline (see [`analyze`]); verification
//! commands only select which checks they summarize. Links are processed in
//! parallel and reports are always sorted by name.

mod config;
mod corpus;
mod output;
mod pipeline;

use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::DiagramError;
use crate::lattice::LatticeError;
use crate::polynomial::PolyError;
use crate::qa::{qa_search, QACertificate, QAError};
use crate::surfaces::SurfaceError;

pub use config::{Convention, OutputFormat, RunConfig, ANCHOR_PD, WORKERS_ENV};
pub use corpus::{load_corpus, parse_corpus, CorpusEntry, EntryKind, Source};
pub use output::{render_report, report_rows, ReportRow};
pub use pipeline::{
    analyze, lattice_paths, CertStatus, CertificateSummary, Definite, InvariantReport, LatticePath,
    OrientedInvariants, TwoBridgeSummary,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("no link named `{0}` in the corpus")]
    UnknownLink(String),
    #[error("config: {0}")]
    Config(String),
    #[error("orientation anchor: {0}")]
    Anchor(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Qa(#[from] QAError),
    #[error("output: {0}")]
    Output(String),
}

impl VerifyError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        VerifyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    /// Exit code for the command line: 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Poly(PolyError::ResourceLimit { .. })
            | VerifyError::Lattice(LatticeError::ResourceLimit { .. })
            | VerifyError::Qa(QAError::BudgetExceeded { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(m) => write!(f, "fail({m})"),
            Verdict::Skipped(r) => write!(f, "skipped({r})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|V(-1)|` against the Goeritz and lattice determinants.
    Determinant,
    /// Both colorings give the same signature and correction terms.
    Colorings,
    /// Seifert signature of braid closures.
    Seifert,
    /// `{-sigma/4}` equals the Spin correction terms of the lattice.
    TheoremLattice,
    SpinCount,
    Certificate,
    /// `-4 d = sigma` along the certificate, per orientation.
    TheoremCertificate,
    CertificateInLattice,
    SignatureRecursion,
    Mirror,
    /// Lattice correction terms of 2-bridge entries against the lens recursion.
    Lens,
    /// The Jones-polynomial value of lambda is orientation independent, and
    /// matches the Dedekind sum when the cover is a lens space.
    Mullins,
    /// `(d + lambda)/2 = -(1/12) V'(-1)/V(-1)` as multisets.
    Corollary,
}

impl CheckKind {
    pub const ALL: [CheckKind; 13] = [
        CheckKind::Determinant,
        CheckKind::Colorings,
        CheckKind::Seifert,
        CheckKind::TheoremLattice,
        CheckKind::SpinCount,
        CheckKind::Certificate,
        CheckKind::TheoremCertificate,
        CheckKind::CertificateInLattice,
        CheckKind::SignatureRecursion,
        CheckKind::Mirror,
        CheckKind::Lens,
        CheckKind::Mullins,
        CheckKind::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Determinant => "determinant",
            CheckKind::Colorings => "colorings",
            CheckKind::Seifert => "seifert",
            CheckKind::TheoremLattice => "theorem_lattice",
            CheckKind::SpinCount => "spin_count",
            CheckKind::Certificate => "certificate",
            CheckKind::TheoremCertificate => "theorem_certificate",
            CheckKind::CertificateInLattice => "certificate_in_lattice",
            CheckKind::SignatureRecursion => "signature_recursion",
            CheckKind::Mirror => "mirror",
            CheckKind::Lens => "lens",
            CheckKind::Mullins => "mullins",
            CheckKind::Corollary => "corollary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub kind: CheckKind,
    pub verdict: Verdict,
}

/// Exact rationals as `p/q` strings.
pub mod qser {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn q(x: &BigRational) -> String {
        format!("{}/{}", x.numer(), x.denom())
    }

    pub fn one<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q(x))
    }

    pub fn opt<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn vec<S: Serializer>(x: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(q))
    }

    pub fn opt_vec<S: Serializer>(x: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.iter().map(q).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }
}

/// Space-separated `p/q` values.
pub fn qlist(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(qser::q).collect();
    format!("[{}]", parts.join(" "))
}

/// Loads the corpus and analyzes every entry within the crossing bound,
/// in parallel. Reports come back sorted by name.
pub fn sweep(cfg: &RunConfig) -> Result<Vec<InvariantReport>, VerifyError> {
    cfg.check_anchor()?;
    let entries = load_corpus(&cfg.corpus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| VerifyError::Config(e.to_string()))?;
    let mut reports: Vec<InvariantReport> = pool
        .install(|| {
            entries
                .par_iter()
                .map(|e| {
                    if let Some(max) = cfg.max_crossings {
                        if e.diagram()?.crossing_count() > max {
                            return Ok(None);
                        }
                    }
                    analyze(e, cfg).map(Some)
                })
                .collect::<Result<Vec<_>, VerifyError>>()
        })?
        .into_iter()
        .flatten()
        .collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

fn find_entry(cfg: &RunConfig, name: &str) -> Result<CorpusEntry, VerifyError> {
    load_corpus(&cfg.corpus)?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| VerifyError::UnknownLink(name.to_string()))
}

pub fn cmd_invariants(cfg: &RunConfig, name: &str) -> Result<InvariantReport, VerifyError> {
    cfg.check_anchor()?;
    analyze(&find_entry(cfg, name)?, cfg)
}

/// Certificate search for one corpus link. `NotFound` is inconclusive.
pub fn cmd_qa_cert(cfg: &RunConfig, name: &str) -> Result<QACertificate, VerifyError> {
    let d = find_entry(cfg, name)?.diagram()?;
    Ok(qa_search(&d, cfg.qa_budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub name: String,
    pub check: CheckKind,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suite: String,
    pub rows: Vec<SummaryRow>,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub resource_limited: bool,
}

impl Summary {
    pub fn from_reports(suite: &str, reports: &[InvariantReport], kinds: &[CheckKind]) -> Self {
        let rows: Vec<SummaryRow> = reports
            .iter()
            .flat_map(|r| {
                kinds.iter().map(|&k| SummaryRow {
                    name: r.name.clone(),
                    check: k,
                    verdict: r.verdict(k).clone(),
                })
            })
            .collect();
        let count = |f: fn(&Verdict) -> bool| rows.iter().filter(|r| f(&r.verdict)).count();
        Summary {
            suite: suite.to_string(),
            pass: count(Verdict::is_pass),
            fail: count(Verdict::is_fail),
            skipped: count(|v| matches!(v, Verdict::Skipped(_))),
            resource_limited: reports.iter().any(|r| r.resource_limited),
            rows,
        }
    }

    pub fn failures(&self) -> Vec<&SummaryRow> {
        self.rows.iter().filter(|r| r.verdict.is_fail()).collect()
    }

    /// 0 when everything passed, 2 on any failure, 3 when only resource
    /// limits stood in the way.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            2
        } else if self.resource_limited {
            3
        } else {
            0
        }
    }

    pub fn to_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut s = format!("{:width$}  {:24}  verdict\n", "link", "check");
        for r in &self.rows {
            s += &format!("{:width$}  {:24}  {}\n", r.name, r.check.name(), r.verdict);
        }
        s += &format!(
            "{}: {} pass, {} fail, {} skipped\n",
            self.suite, self.pass, self.fail, self.skipped
        );
        s
    }
}

pub fn cmd_verify_theorem(cfg: &RunConfig) -> Result<Summary, VerifyError> {
    let reports = sweep(cfg)?;
    Ok(Summary::from_reports(
        "theorem",
        &reports,
        &[CheckKind::TheoremLattice, CheckKind::TheoremCertificate],
    ))
}

pub fn cmd_verify_corollary(cfg: &RunConfig) -> Result<Summary, VerifyError> {
    let reports = sweep(cfg)?;
    Ok(Summary::from_reports(
        "corollary",
        &reports,
        &[CheckKind::Lens, CheckKind::Mullins, CheckKind::Corollary],
    ))
}

/// Writes the report for the whole corpus to `out` in the configured
/// format and returns the underlying reports.
pub fn cmd_report(cfg: &RunConfig, out: &Path) -> Result<Vec<InvariantReport>, VerifyError> {
    let reports = sweep(cfg)?;
    let text = render_report(&reports, cfg.format)?;
    std::fs::write(out, text).map_err(|e| VerifyError::io(out, e))?;
    Ok(reports)
}

/// Exit code for a set of reports: see [`Summary::exit_code`].
pub fn exit_code(reports: &[InvariantReport]) -> i32 {
    Summary::from_reports("all", reports, &CheckKind::ALL).exit_code()
}
