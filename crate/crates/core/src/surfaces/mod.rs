//! Checkerboard surfaces: Goeritz forms, the Gordon-Litherland signature,
//! and the Seifert form of a braid closure as an independent check.
//!
//! Conventions. A crossing's A-corners are its corners 1 and 3 (the
//! regions merged by [`Resolution::One`](crate::diagram::Resolution)). For
//! a coloring, `eps(X) = +1` when the A-corners of `X` are white. The full
//! Goeritz matrix on white regions gets `+eps` between the two white
//! regions at `X` and `-eps` on their diagonal entries. A crossing is of
//! type II when `eps` differs from its sign, and
//! `sigma = sig(G) - sum of signs of type II crossings`.
//! The positive trefoil then has `sigma = -2`.

mod seifert;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{LinkDiagram, Orientation};
use crate::linalg::{self, IntMatrix};

pub use seifert::{seifert_matrix, seifert_signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("not a braid closure in its braid orientation")]
    NotBraidClosure,
    #[error("checkerboard colorings disagree on the signature ({0} vs {1})")]
    ColoringMismatch(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColoringId {
    /// White regions are those in the class of corner 0 of crossing 0.
    White,
    /// The complementary coloring.
    Black,
}

impl ColoringId {
    pub fn other(self) -> Self {
        match self {
            ColoringId::White => ColoringId::Black,
            ColoringId::Black => ColoringId::White,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingType {
    I,
    II,
}

/// A 2-coloring of the faces; `white[f]` says whether face `f` is white.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub id: ColoringId,
    pub white: Vec<bool>,
    pub corner_face: Vec<[usize; 4]>,
}

impl Coloring {
    pub fn white_count(&self) -> usize {
        self.white.iter().filter(|&&w| w).count()
    }

    pub fn black_count(&self) -> usize {
        self.white.len() - self.white_count()
    }
}

/// Both colorings of a connected diagram, `White` first.
pub fn checkerboard(d: &LinkDiagram) -> Result<[Coloring; 2], SurfaceError> {
    if !d.is_connected() {
        return Err(SurfaceError::DisconnectedDiagram);
    }
    if d.crossing_count() == 0 {
        let make = |id| Coloring {
            id,
            white: vec![true, false],
            corner_face: Vec::new(),
        };
        return Ok([make(ColoringId::White), make(ColoringId::Black)]);
    }
    let regions = d.regions();
    // Corners k and k+1 lie on opposite sides of an edge.
    let mut adj = vec![Vec::new(); regions.count];
    for f in &regions.corner_face {
        for k in 0..4 {
            adj[f[k]].push(f[(k + 1) % 4]);
        }
    }
    let mut class: Vec<Option<bool>> = vec![None; regions.count];
    class[regions.corner_face[0][0]] = Some(true);
    let mut stack = vec![regions.corner_face[0][0]];
    while let Some(face) = stack.pop() {
        let c = class[face].unwrap();
        for &g in &adj[face] {
            match class[g] {
                None => {
                    class[g] = Some(!c);
                    stack.push(g);
                }
                Some(prev) => assert_eq!(prev, !c, "faces of a planar diagram are 2-colorable"),
            }
        }
    }
    let base: Vec<bool> = class
        .into_iter()
        .map(|c| c.expect("every face has a corner"))
        .collect();
    let white = Coloring {
        id: ColoringId::White,
        white: base.clone(),
        corner_face: regions.corner_face.clone(),
    };
    let black = Coloring {
        id: ColoringId::Black,
        white: base.iter().map(|w| !w).collect(),
        corner_face: regions.corner_face,
    };
    Ok([white, black])
}

/// Reduced Goeritz matrix of one coloring together with the per-crossing
/// data the signature correction needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzForm {
    pub coloring: ColoringId,
    /// Row and column of the first white region removed.
    pub matrix: IntMatrix,
    /// `+1` when the crossing's A-corners are white.
    pub eps: Vec<i8>,
    /// White faces in matrix order, after the deleted one.
    pub white_faces: Vec<usize>,
}

impl GoeritzForm {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn crossing_types(&self, signs: &[i8]) -> Vec<CrossingType> {
        self.eps
            .iter()
            .zip(signs)
            .map(|(&e, &s)| {
                if e == s {
                    CrossingType::I
                } else {
                    CrossingType::II
                }
            })
            .collect()
    }

    /// Gordon-Litherland correction: sum of signs over type II crossings.
    pub fn correction(&self, signs: &[i8]) -> i64 {
        self.eps
            .iter()
            .zip(signs)
            .filter(|(e, s)| e != s)
            .map(|(_, &s)| s as i64)
            .sum()
    }

    pub fn determinant(&self) -> u64 {
        use num_traits::{Signed, ToPrimitive};
        linalg::determinant(&self.matrix)
            .abs()
            .to_u64()
            .expect("determinant fits in u64")
    }

    pub fn signature(&self) -> i64 {
        linalg::signature(&self.matrix)
    }

    pub fn is_negative_definite(&self) -> bool {
        linalg::is_negative_definite(&self.matrix)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.matrix)
    }
}

pub fn goeritz(d: &LinkDiagram, coloring: ColoringId) -> Result<GoeritzForm, SurfaceError> {
    let [w, b] = checkerboard(d)?;
    let col = if coloring == ColoringId::White { w } else { b };
    Ok(goeritz_from(&col))
}

pub fn goeritz_from(col: &Coloring) -> GoeritzForm {
    let faces: Vec<usize> = (0..col.white.len()).filter(|&f| col.white[f]).collect();
    let index = |f: usize| faces.iter().position(|&g| g == f).expect("white face");
    let m = faces.len();
    let mut full = vec![vec![0i64; m]; m];
    let mut eps = Vec::with_capacity(col.corner_face.len());
    for f in &col.corner_face {
        let e: i8 = if col.white[f[1]] { 1 } else { -1 };
        eps.push(e);
        let k = if e == 1 { 1 } else { 0 };
        let (i, j) = (index(f[k]), index(f[k + 2]));
        if i != j {
            let e = e as i64;
            full[i][j] += e;
            full[j][i] += e;
            full[i][i] -= e;
            full[j][j] -= e;
        }
    }
    let matrix: IntMatrix = full.iter().skip(1).map(|row| row[1..].to_vec()).collect();
    GoeritzForm {
        coloring: col.id,
        matrix,
        eps,
        white_faces: faces.into_iter().skip(1).collect(),
    }
}

/// Gordon-Litherland signature from a single coloring.
pub fn signature_from(g: &GoeritzForm, d: &LinkDiagram, o: &Orientation) -> i64 {
    g.signature() - g.correction(&d.crossing_signs(o).0)
}

/// Signature of `(d, o)`, computed from both colorings, which must agree.
pub fn signature_gl(d: &LinkDiagram, o: &Orientation) -> Result<i64, SurfaceError> {
    let a = signature_from(&goeritz(d, ColoringId::White)?, d, o);
    let b = signature_from(&goeritz(d, ColoringId::Black)?, d, o);
    if a != b {
        return Err(SurfaceError::ColoringMismatch(a, b));
    }
    Ok(a)
}

/// `|det G|`, the link determinant.
pub fn determinant_goeritz(d: &LinkDiagram) -> Result<u64, SurfaceError> {
    Ok(goeritz(d, ColoringId::White)?.determinant())
}

/// Determinant of any diagram: zero when the projection is disconnected.
pub fn determinant_any(d: &LinkDiagram) -> u64 {
    determinant_goeritz(d).unwrap_or(0)
}
