use crate::diagram::{BraidWord, LinkDiagram, Orientation};
use crate::linalg::{self, IntMatrix};

use super::SurfaceError;

/// Linking sign between loops on neighbouring columns whose band intervals
/// interleave as `p < q < p' < q'` (left column first). Negating the loops
/// of every other column flips it, so the signature does not depend on it.
const INTERLEAVE_SIGN: i64 = -1;

/// Symmetrized Seifert matrix `V + V^T` of the Seifert surface of a braid
/// closure: one disk per strand, one half-twisted band per letter. Its
/// first homology has one loop for each pair of consecutive bands in a
/// column.
pub fn seifert_matrix(word: &BraidWord) -> IntMatrix {
    // (column, first band position, second band position, first sign, second sign)
    let mut loops: Vec<(usize, usize, usize, i64, i64)> = Vec::new();
    for col in 1..word.strands {
        let bands: Vec<(usize, i64)> = word
            .gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.unsigned_abs() as usize == col)
            .map(|(t, &g)| (t, g.signum() as i64))
            .collect();
        for w in bands.windows(2) {
            loops.push((col, w[0].0, w[1].0, w[0].1, w[1].1));
        }
    }
    let n = loops.len();
    let mut s = vec![vec![0i64; n]; n];
    for a in 0..n {
        let (ca, pa, pa2, ea, ea2) = loops[a];
        s[a][a] = -(ea + ea2);
        for b in a + 1..n {
            let (cb, pb, pb2, eb, _) = loops[b];
            let v = if ca == cb && pa2 == pb {
                eb
            } else if cb == ca + 1 {
                interleave(pa, pa2, pb, pb2)
            } else if ca == cb + 1 {
                interleave(pb, pb2, pa, pa2)
            } else {
                0
            };
            s[a][b] = v;
            s[b][a] = v;
        }
    }
    s
}

fn interleave(p: usize, p2: usize, q: usize, q2: usize) -> i64 {
    if p < q && q < p2 && p2 < q2 {
        INTERLEAVE_SIGN
    } else if q < p && p < q2 && q2 < p2 {
        -INTERLEAVE_SIGN
    } else {
        0
    }
}

/// Signature of a braid closure from its Seifert form. The orientation must
/// be the braid orientation or its global reverse.
pub fn seifert_signature(d: &LinkDiagram, o: &Orientation) -> Result<i64, SurfaceError> {
    let word = d.braid().ok_or(SurfaceError::NotBraidClosure)?;
    let dirs = o.dirs();
    if dirs.iter().any(|&x| x != dirs[0]) {
        return Err(SurfaceError::NotBraidClosure);
    }
    Ok(linalg::signature(&seifert_matrix(word)))
}
