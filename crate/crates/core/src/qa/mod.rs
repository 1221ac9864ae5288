//! Quasi-alternating certificates and the signature and correction-term
//! recursions they support.
//!
//! A link is certified when it is the unknot, or some crossing splits it
//! into two certified links whose determinants add up to its own. Every
//! diagram is stripped of nugatory crossings before it is examined; without
//! that even the trefoil fails, because one of its smoothings is a twisted
//! unknot diagram whose own smoothings are an unknot and a split link.
//!
//! Along a certificate, at a crossing of sign `s` under `o`, with `(L', o')`
//! the oriented smoothing:
//! `sigma(L, o) = sigma(L', o') - s` and `d(L, o) = d(L', o') + s/4`.
//! For `s = -1` this is the positive-crossing rule applied to the mirror.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{LinkDiagram, Orientation, Resolution};
use crate::surfaces::determinant_any;

pub const DEFAULT_QA_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QAError {
    #[error("determinant is zero, so the link is not quasi-alternating")]
    ZeroDeterminant,
    #[error("no certificate found (inconclusive)")]
    NotFound,
    #[error("search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("certificate does not match the diagram: {0}")]
    OrientationMismatch(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QACertificate {
    UnknotLeaf,
    Node(Box<ResolutionNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionNode {
    /// PD code (1-based) of the diagram at this node, after simplification.
    pub pd: Vec<[usize; 4]>,
    #[serde(skip)]
    pub diagram: Option<LinkDiagram>,
    pub crossing: usize,
    /// The crossing is negative in the default orientation, so the step is
    /// the positive-crossing step for the mirror.
    pub mirrored: bool,
    /// `(det L, det L0, det L1)`.
    pub det: [u64; 3],
    pub zero: QACertificate,
    pub one: QACertificate,
}

impl QACertificate {
    pub fn is_leaf(&self) -> bool {
        matches!(self, QACertificate::UnknotLeaf)
    }

    pub fn node_count(&self) -> usize {
        match self {
            QACertificate::UnknotLeaf => 1,
            QACertificate::Node(n) => 1 + n.zero.node_count() + n.one.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            QACertificate::UnknotLeaf => 0,
            QACertificate::Node(n) => 1 + n.zero.depth().max(n.one.depth()),
        }
    }

    /// Internal nodes, preorder.
    pub fn nodes(&self) -> Vec<&ResolutionNode> {
        let mut out = Vec::new();
        fn go<'a>(c: &'a QACertificate, out: &mut Vec<&'a ResolutionNode>) {
            if let QACertificate::Node(n) = c {
                out.push(n);
                go(&n.zero, out);
                go(&n.one, out);
            }
        }
        go(self, &mut out);
        out
    }

    /// One node per line: crossing index, mirror flag and determinant triple.
    pub fn to_tree_string(&self) -> String {
        let mut s = String::new();
        fn go(c: &QACertificate, depth: usize, label: &str, s: &mut String) {
            let pad = "  ".repeat(depth);
            match c {
                QACertificate::UnknotLeaf => {
                    let _ = writeln!(s, "{pad}{label}unknot");
                }
                QACertificate::Node(n) => {
                    let _ = writeln!(
                        s,
                        "{pad}{label}crossing {} mirrored={} det {} = {} + {}",
                        n.crossing, n.mirrored, n.det[0], n.det[1], n.det[2]
                    );
                    go(&n.zero, depth + 1, "L0: ", s);
                    go(&n.one, depth + 1, "L1: ", s);
                }
            }
        }
        go(self, 0, "", &mut s);
        s
    }
}

/// Smoothing of crossing `c` followed by nugatory-crossing removal.
pub fn simplified_child(d: &LinkDiagram, c: usize, kind: Resolution) -> LinkDiagram {
    d.resolve(c, kind)
        .expect("crossing index in range")
        .simplify(None)
        .0
}

struct Searcher {
    memo: HashMap<String, Option<QACertificate>>,
    budget: u64,
    nodes: u64,
}

impl Searcher {
    fn certify(&mut self, d: &LinkDiagram) -> Result<Option<QACertificate>, QAError> {
        if d.is_unknot_diagram() {
            return Ok(Some(QACertificate::UnknotLeaf));
        }
        let key = d.canonical_key();
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(QAError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let det = determinant_any(d);
        let mut result = None;
        if det > 0 {
            let mut candidates = Vec::new();
            for c in 0..d.crossing_count() {
                let zero = simplified_child(d, c, Resolution::Zero);
                let one = simplified_child(d, c, Resolution::One);
                let (d0, d1) = (determinant_any(&zero), determinant_any(&one));
                if d0 > 0 && d1 > 0 && d0 + d1 == det {
                    candidates.push((c, zero, one, d0, d1));
                }
            }
            candidates.sort_by_key(|&(c, _, _, d0, d1)| (std::cmp::Reverse(d0 * d1), c));
            for (c, zero, one, d0, d1) in candidates {
                let Some(z) = self.certify(&zero)? else {
                    continue;
                };
                let Some(o) = self.certify(&one)? else {
                    continue;
                };
                result = Some(QACertificate::Node(Box::new(ResolutionNode {
                    pd: d.pd_code(),
                    diagram: Some(d.clone()),
                    crossing: c,
                    mirrored: d.default_sign(c) < 0,
                    det: [det, d0, d1],
                    zero: z,
                    one: o,
                })));
                break;
            }
        }
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

/// Depth-first search for a certificate of `d` within `budget` diagram
/// visits. `NotFound` is inconclusive.
pub fn qa_search(d: &LinkDiagram, budget: u64) -> Result<QACertificate, QAError> {
    let (d, _) = d.simplify(None);
    if d.is_unknot_diagram() {
        return Ok(QACertificate::UnknotLeaf);
    }
    if determinant_any(&d) == 0 {
        return Err(QAError::ZeroDeterminant);
    }
    let mut s = Searcher {
        memo: HashMap::new(),
        budget,
        nodes: 0,
    };
    s.certify(&d)?.ok_or(QAError::NotFound)
}

fn node_diagram(n: &ResolutionNode) -> Result<LinkDiagram, QAError> {
    match &n.diagram {
        Some(d) => Ok(d.clone()),
        None => {
            let text = serde_json::to_string(&n.pd).expect("serializable");
            crate::diagram::parse_pd(&text).map_err(|e| QAError::InvalidCertificate(e.to_string()))
        }
    }
}

/// Rechecks every node: determinants, additivity, that the children are
/// the simplified smoothings, and that leaves are unknots.
pub fn validate(cert: &QACertificate, d: &LinkDiagram) -> Result<(), QAError> {
    let (d, _) = d.simplify(None);
    validate_at(cert, &d)
}

fn validate_at(cert: &QACertificate, d: &LinkDiagram) -> Result<(), QAError> {
    match cert {
        QACertificate::UnknotLeaf => {
            if d.is_unknot_diagram() {
                Ok(())
            } else {
                Err(QAError::InvalidCertificate(format!(
                    "leaf at non-unknot diagram {d}"
                )))
            }
        }
        QACertificate::Node(n) => {
            let bad = |m: String| Err(QAError::InvalidCertificate(m));
            if n.pd != d.pd_code() {
                return bad(format!("node diagram differs from {d}"));
            }
            if n.crossing >= d.crossing_count() {
                return bad(format!("crossing {} out of range", n.crossing));
            }
            if n.mirrored != (d.default_sign(n.crossing) < 0) {
                return bad("mirror flag disagrees with the crossing sign".into());
            }
            let zero = simplified_child(d, n.crossing, Resolution::Zero);
            let one = simplified_child(d, n.crossing, Resolution::One);
            let dets = [
                determinant_any(d),
                determinant_any(&zero),
                determinant_any(&one),
            ];
            if dets != n.det {
                return bad(format!("determinants {:?} recorded as {:?}", dets, n.det));
            }
            if dets.contains(&0) || dets[0] != dets[1] + dets[2] {
                return bad(format!("determinants {dets:?} are not additive"));
            }
            if zero.crossing_count() >= d.crossing_count()
                || one.crossing_count() >= d.crossing_count()
            {
                return bad("crossing count did not drop".into());
            }
            validate_at(&n.zero, &zero)?;
            validate_at(&n.one, &one)
        }
    }
}

/// One oriented step of a certificate.
pub struct OrientedStep<'a> {
    pub node: &'a ResolutionNode,
    pub diagram: LinkDiagram,
    pub orientation: Orientation,
    /// Sign of the certified crossing under `orientation`.
    pub sign: i8,
    pub child: LinkDiagram,
    pub child_orientation: Orientation,
}

/// Follows the oriented smoothings of `cert` from `(d, o)` down to a leaf,
/// returning the steps in order.
pub fn oriented_path<'a>(
    cert: &'a QACertificate,
    d: &LinkDiagram,
    o: &Orientation,
) -> Result<Vec<OrientedStep<'a>>, QAError> {
    let (mut d, o) = d.simplify(Some(o));
    let mut o = o.expect("orientation carried");
    let mut cert = cert;
    let mut steps = Vec::new();
    loop {
        match cert {
            QACertificate::UnknotLeaf => {
                if !d.is_unknot_diagram() {
                    return Err(QAError::OrientationMismatch(format!("leaf reached at {d}")));
                }
                return Ok(steps);
            }
            QACertificate::Node(n) => {
                if n.pd != d.pd_code() {
                    return Err(QAError::OrientationMismatch(format!(
                        "certificate node does not match {d}"
                    )));
                }
                let sign = d.crossing_signs(&o).0[n.crossing];
                let (child, co) = d
                    .resolve_oriented(n.crossing, &o)
                    .map_err(|e| QAError::OrientationMismatch(e.to_string()))?;
                let (child, co) = child.simplify(Some(&co));
                let co = co.expect("orientation carried");
                steps.push(OrientedStep {
                    node: n,
                    diagram: d.clone(),
                    orientation: o.clone(),
                    sign,
                    child: child.clone(),
                    child_orientation: co.clone(),
                });
                cert = if sign > 0 { &n.one } else { &n.zero };
                d = child;
                o = co;
            }
        }
    }
}

/// Signature from the certificate alone.
pub fn sigma_from_certificate(
    cert: &QACertificate,
    d: &LinkDiagram,
    o: &Orientation,
) -> Result<i64, QAError> {
    Ok(oriented_path(cert, d, o)?
        .iter()
        .map(|s| -(s.sign as i64))
        .sum())
}

/// Correction term of the branched double cover in the Spin structure of
/// `o`, from the certificate alone.
pub fn d_from_certificate(
    cert: &QACertificate,
    d: &LinkDiagram,
    o: &Orientation,
) -> Result<BigRational, QAError> {
    Ok(oriented_path(cert, d, o)?
        .iter()
        .fold(BigRational::zero(), |acc, s| {
            acc + BigRational::new(BigInt::from(s.sign), BigInt::from(4))
        }))
}

/// Validates a certificate and a whole node subtree without the stored
/// diagrams (as after deserialization).
pub fn validate_serialized(cert: &QACertificate) -> Result<(), QAError> {
    match cert {
        QACertificate::UnknotLeaf => Ok(()),
        QACertificate::Node(n) => validate(cert, &node_diagram(n)?),
    }
}

#[cfg(test)]
mod tests;
