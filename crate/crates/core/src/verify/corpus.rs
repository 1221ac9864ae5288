use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::diagram::{
    parse_braid, parse_pd, rational_link, two_bridge_cover, DiagramError, LinkDiagram,
};

use super::VerifyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Unknot,
    Pd(String),
    Braid { strands: usize, word: String },
    Rational { p: i64, q: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Unknot,
    Pd,
    Braid,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    /// 1-based line in the corpus file.
    pub line: usize,
}

impl CorpusEntry {
    pub fn kind(&self) -> EntryKind {
        match self.source {
            Source::Unknot => EntryKind::Unknot,
            Source::Pd(_) => EntryKind::Pd,
            Source::Braid { .. } => EntryKind::Braid,
            Source::Rational { .. } => EntryKind::Rational,
        }
    }

    pub fn diagram(&self) -> Result<LinkDiagram, DiagramError> {
        match &self.source {
            Source::Unknot => Ok(LinkDiagram::unknot()),
            Source::Pd(text) => parse_pd(text),
            Source::Braid { strands, word } => parse_braid(word, *strands),
            Source::Rational { p, q } => rational_link(*p, *q),
        }
    }

    /// Fraction `p/q` of a rational entry.
    pub fn fraction(&self) -> Option<(i64, i64)> {
        match self.source {
            Source::Rational { p, q } => Some((p, q)),
            Source::Unknot => Some((1, 0)),
            _ => None,
        }
    }

    /// Lens parameters of the branched double cover, for entries whose
    /// cover is known to be a lens space.
    pub fn lens_cover(&self) -> Option<(i64, i64)> {
        self.fraction().map(|(p, q)| two_bridge_cover(p, q))
    }
}

impl fmt::Display for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Unknot => write!(f, "{} unknot", self.name),
            Source::Pd(text) => write!(f, "{} {}", self.name, text),
            Source::Braid { strands, word } => {
                write!(f, "{} braid {}: {}", self.name, strands, word)
            }
            Source::Rational { p, q } => write!(f, "{} rational {}/{}", self.name, p, q),
        }
    }
}

/// Parses corpus text: one `<name> <record>` per line, `#` comments.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, VerifyError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let bad = |message: String| VerifyError::Corpus { line, message };
        let (name, rest) = body
            .split_once(char::is_whitespace)
            .ok_or_else(|| bad(format!("no record after `{body}`")))?;
        let rest = rest.trim();
        let source = if rest == "unknot" {
            Source::Unknot
        } else if rest.starts_with('[') {
            Source::Pd(rest.to_string())
        } else if let Some(b) = rest.strip_prefix("braid") {
            let (k, word) = b
                .split_once(':')
                .ok_or_else(|| bad("braid record needs `<strands>:`".into()))?;
            let strands = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad strand count `{}`", k.trim())))?;
            Source::Braid {
                strands,
                word: word.trim().to_string(),
            }
        } else if let Some(r) = rest.strip_prefix("rational") {
            let (p, q) = r
                .trim()
                .split_once('/')
                .ok_or_else(|| bad("rational record needs `p/q`".into()))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| bad(format!("bad fraction `{}`", r.trim())))
            };
            Source::Rational {
                p: num(p)?,
                q: num(q)?,
            }
        } else {
            return Err(bad(format!("unrecognised record `{rest}`")));
        };
        if !seen.insert(name.to_string()) {
            return Err(bad(format!("duplicate name `{name}`")));
        }
        out.push(CorpusEntry {
            name: name.to_string(),
            source,
            line,
        });
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, VerifyError> {
    let text = std::fs::read_to_string(path).map_err(|e| VerifyError::io(path, e))?;
    parse_corpus(&text)
}
