use super::{LinkDiagram, Slot};

/// Faces of the diagram's projection. Corner `k` of a crossing is the
/// angle between positions `k` and `k + 1`.
#[derive(Clone, Debug)]
pub struct Regions {
    pub corner_face: Vec<[usize; 4]>,
    pub count: usize,
}

impl Regions {
    /// Corners of each face, in tracing order.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, f) in self.corner_face.iter().enumerate() {
            for (k, &r) in f.iter().enumerate() {
                out[r].push(Slot::new(x, k));
            }
        }
        out
    }
}

impl LinkDiagram {
    /// Faces traced corner to corner: leaving corner `(X, k)` along the edge
    /// at position `k + 1` lands on the corner labelled by the far slot.
    /// Disconnected diagrams get faces per piece, so a region touching two
    /// pieces is counted once for each.
    pub fn regions(&self) -> Regions {
        let n = self.crossings.len();
        let mut corner_face = vec![[usize::MAX; 4]; n];
        let mut count = 0;
        for x in 0..n {
            for k in 0..4 {
                if corner_face[x][k] != usize::MAX {
                    continue;
                }
                let mut cur = Slot::new(x, k);
                while corner_face[cur.crossing][cur.pos] == usize::MAX {
                    corner_face[cur.crossing][cur.pos] = count;
                    cur = self.opposite(Slot::new(cur.crossing, (cur.pos + 1) % 4));
                }
                count += 1;
            }
        }
        Regions { corner_face, count }
    }
}
