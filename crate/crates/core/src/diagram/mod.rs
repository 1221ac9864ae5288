//! Planar link diagrams: PD codes, braid closures, 2-bridge plats, orientations,
//! crossing smoothings and mirrors.
//!
//! A diagram stores one 4-tuple of edge ids per crossing, listed
//! counterclockwise starting from the incoming under-strand of the default
//! orientation. Edge ids are dense (`0..2n`) and assigned in trace order:
//! the smallest unused label starts a new component. Components without
//! crossings are kept as a count of free loops.
//!
//! Smoothings are named after the crossing picture, not the orientation:
//! [`Resolution::One`] joins the regions swept when the over-strand is
//! rotated counterclockwise (the Kauffman A-smoothing), [`Resolution::Zero`]
//! the other pair. At a positive crossing the `One` smoothing is the
//! oriented one.

mod construct;
mod normalize;
mod parse;
mod regions;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use construct::{braid_closure, rational_link, two_bridge_cover, BraidWord};
pub use parse::{parse_braid, parse_pd};
pub use regions::Regions;

pub(crate) use normalize::{normalize, DirectionRule, PlanarCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedPD(String),
    #[error("edge label {label} appears {count} times (expected 2)")]
    EdgeMultiplicity { label: usize, count: usize },
    #[error("strand tracing failed: {0}")]
    TraceFailure(String),
    #[error("malformed braid word: {0}")]
    MalformedBraid(String),
    #[error("PD code is not planar: {0}")]
    NonPlanar(String),
    #[error("bad 2-bridge parameters {p}/{q}")]
    BadFraction { p: i64, q: i64 },
    #[error("crossing index {0} out of range")]
    NoSuchCrossing(usize),
}

/// Position `pos` (0..4) of crossing `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

impl Slot {
    pub fn new(crossing: usize, pos: usize) -> Self {
        Slot { crossing, pos }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// B-smoothing: joins positions (0,3) and (1,2).
    Zero,
    /// A-smoothing: joins positions (0,1) and (2,3).
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    components: Vec<Vec<usize>>,
    edge_component: Vec<usize>,
    heads: Vec<Slot>,
    tails: Vec<Slot>,
    free_loops: usize,
    braid: Option<BraidWord>,
}

/// Per-component direction relative to the default trace direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    dirs: Vec<bool>,
}

impl Orientation {
    pub fn new(dirs: Vec<bool>) -> Self {
        Orientation { dirs }
    }

    pub fn default_for(d: &LinkDiagram) -> Self {
        Orientation {
            dirs: vec![true; d.n_components()],
        }
    }

    /// All `2^n` orientations, in binary-counter order.
    pub fn all(d: &LinkDiagram) -> Vec<Orientation> {
        let n = d.n_components();
        (0..1u64 << n)
            .map(|m| Orientation {
                dirs: (0..n).map(|k| m >> k & 1 == 0).collect(),
            })
            .collect()
    }

    /// One representative per quasi-orientation: the first component keeps
    /// its default direction.
    pub fn quasi(d: &LinkDiagram) -> Vec<Orientation> {
        Self::all(d)
            .into_iter()
            .filter(|o| o.dirs.first().copied().unwrap_or(true))
            .collect()
    }

    pub fn dirs(&self) -> &[bool] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            dirs: self.dirs.iter().map(|b| !b).collect(),
        }
    }

    pub fn flip(&self, component: usize) -> Self {
        let mut dirs = self.dirs.clone();
        dirs[component] = !dirs[component];
        Orientation { dirs }
    }

    /// Representative of the quasi-orientation class (first entry `true`).
    pub fn canonical(&self) -> Self {
        if self.dirs.first() == Some(&false) {
            self.reversed()
        } else {
            self.clone()
        }
    }

    /// Bit string, component 0 first; `+` is the default direction.
    pub fn label(&self) -> String {
        self.dirs
            .iter()
            .map(|&b| if b { '+' } else { '-' })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSigns(pub Vec<i8>);

impl CrossingSigns {
    pub fn writhe(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).sum()
    }
}

/// Child crossing `i` came from parent crossing `origin[i].0`, rotated by two
/// positions when `origin[i].1` is set.
#[derive(Clone, Debug)]
pub(crate) struct Lineage {
    pub origin: Vec<(usize, bool)>,
}

impl Lineage {
    fn parent_slot(&self, s: Slot) -> Slot {
        let (x, rot) = self.origin[s.crossing];
        Slot::new(x, if rot { (s.pos + 2) % 4 } else { s.pos })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl LinkDiagram {
    pub(crate) fn assemble(
        crossings: Vec<[usize; 4]>,
        components: Vec<Vec<usize>>,
        heads: Vec<Slot>,
        free_loops: usize,
    ) -> Self {
        let n_edges = heads.len();
        let mut edge_component = vec![0; n_edges];
        for (k, comp) in components.iter().enumerate() {
            for &e in comp {
                edge_component[e] = k;
            }
        }
        let mut tails = vec![Slot::new(0, 0); n_edges];
        for (x, t) in crossings.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                if heads[e] != Slot::new(x, p) {
                    tails[e] = Slot::new(x, p);
                }
            }
        }
        LinkDiagram {
            crossings,
            components,
            edge_component,
            heads,
            tails,
            free_loops,
            braid: None,
        }
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `k` crossingless circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram::assemble(Vec::new(), Vec::new(), Vec::new(), k)
    }

    pub(crate) fn with_braid(mut self, braid: BraidWord) -> Self {
        self.braid = Some(braid);
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.heads.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    /// Components that pass through at least one crossing, as edge sequences
    /// in default direction. Free loops are numbered after these.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, edge: usize) -> usize {
        self.edge_component[edge]
    }

    pub fn head(&self, edge: usize) -> Slot {
        self.heads[edge]
    }

    pub fn tail(&self, edge: usize) -> Slot {
        self.tails[edge]
    }

    pub fn edge_at(&self, s: Slot) -> usize {
        self.crossings[s.crossing][s.pos]
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        self.braid.as_ref()
    }

    pub(crate) fn without_free_loops(&self) -> LinkDiagram {
        LinkDiagram {
            free_loops: 0,
            braid: None,
            ..self.clone()
        }
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 1
    }

    /// Every edge runs from an over-crossing to an under-crossing or back.
    /// Positions 0 and 2 hold the under-strand.
    pub fn is_alternating(&self) -> bool {
        (0..self.edge_count()).all(|e| self.heads[e].pos % 2 != self.tails[e].pos % 2)
    }

    /// The other endpoint of the edge sitting at `s`.
    pub fn opposite(&self, s: Slot) -> Slot {
        let e = self.edge_at(s);
        if self.heads[e] == s {
            self.tails[e]
        } else {
            self.heads[e]
        }
    }

    /// Whether, under `o`, the edge at `s` enters its crossing there.
    pub fn is_head(&self, s: Slot, o: &Orientation) -> bool {
        let e = self.edge_at(s);
        (self.heads[e] == s) == o.dirs[self.edge_component[e]]
    }

    /// Sign of crossing `x` under the default orientation.
    pub fn default_sign(&self, x: usize) -> i8 {
        if self.heads[self.crossings[x][3]] == Slot::new(x, 3) {
            1
        } else {
            -1
        }
    }

    pub fn crossing_signs(&self, o: &Orientation) -> CrossingSigns {
        CrossingSigns(
            (0..self.crossings.len())
                .map(|x| {
                    let t = self.crossings[x];
                    let under = o.dirs[self.edge_component[t[0]]];
                    let over = o.dirs[self.edge_component[t[1]]];
                    let s = self.default_sign(x);
                    if under == over {
                        s
                    } else {
                        -s
                    }
                })
                .collect(),
        )
    }

    pub fn writhe(&self, o: &Orientation) -> i64 {
        self.crossing_signs(o).writhe()
    }

    /// PD code with 1-based edge labels.
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|t| t.map(|e| e + 1)).collect()
    }

    /// Memoization key; distinguishes a diagram from its mirror.
    pub fn canonical_key(&self) -> String {
        let mut s = String::with_capacity(self.crossings.len() * 12 + 8);
        for t in &self.crossings {
            s.push_str(&format!("{},{},{},{};", t[0], t[1], t[2], t[3]));
        }
        s.push_str(&format!("o{}", self.free_loops));
        s
    }

    /// Over- and under-strands swapped at every crossing. Edge ids and
    /// component directions are unchanged, so orientations carry over as is.
    pub fn mirror(&self) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        let mut shift = vec![0usize; crossings.len()];
        for (x, t) in crossings.iter_mut().enumerate() {
            if self.default_sign(x) > 0 {
                t.rotate_right(1);
                shift[x] = 1;
            } else {
                t.rotate_left(1);
                shift[x] = 3;
            }
        }
        let heads = self
            .heads
            .iter()
            .map(|h| Slot::new(h.crossing, (h.pos + shift[h.crossing]) % 4))
            .collect();
        let mut m =
            LinkDiagram::assemble(crossings, self.components.clone(), heads, self.free_loops);
        m.braid = self.braid.as_ref().map(BraidWord::mirror);
        m
    }

    pub fn resolve(&self, c: usize, kind: Resolution) -> Result<LinkDiagram, DiagramError> {
        Ok(self.smooth(c, kind)?.0)
    }

    /// Oriented smoothing of crossing `c` for `o`, with the induced
    /// orientation on the result.
    pub fn resolve_oriented(
        &self,
        c: usize,
        o: &Orientation,
    ) -> Result<(LinkDiagram, Orientation), DiagramError> {
        let sign = *self
            .crossing_signs(o)
            .0
            .get(c)
            .ok_or(DiagramError::NoSuchCrossing(c))?;
        let kind = if sign > 0 {
            Resolution::One
        } else {
            Resolution::Zero
        };
        let (child, lineage) = self.smooth(c, kind)?;
        let induced = induce_orientation(&child, &lineage, |s| self.is_head(s, o))
            .expect("oriented smoothing always carries the orientation");
        Ok((child, induced))
    }

    pub(crate) fn smooth(
        &self,
        c: usize,
        kind: Resolution,
    ) -> Result<(LinkDiagram, Lineage), DiagramError> {
        if c >= self.crossings.len() {
            return Err(DiagramError::NoSuchCrossing(c));
        }
        let t = self.crossings[c];
        let mut uf = UnionFind::new(self.edge_count());
        match kind {
            Resolution::One => {
                uf.union(t[0], t[1]);
                uf.union(t[2], t[3]);
            }
            Resolution::Zero => {
                uf.union(t[0], t[3]);
                uf.union(t[1], t[2]);
            }
        }
        let child_index = |x: usize| if x > c { x - 1 } else { x };
        let mut crossings = Vec::with_capacity(self.crossings.len() - 1);
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for (x, tuple) in self.crossings.iter().enumerate() {
            if x == c {
                continue;
            }
            let mapped = tuple.map(|e| uf.find(e));
            used.extend(mapped);
            crossings.push(mapped);
        }
        let closed: BTreeSet<usize> = t
            .iter()
            .map(|&e| uf.find(e))
            .filter(|r| !used.contains(r))
            .collect();

        let mut hints: HashMap<usize, (Slot, bool)> = HashMap::new();
        for e in 0..self.edge_count() {
            let root = uf.find(e);
            if hints.contains_key(&root) {
                continue;
            }
            let (h, tl) = (self.heads[e], self.tails[e]);
            let hint = if h.crossing != c {
                Some((Slot::new(child_index(h.crossing), h.pos), true))
            } else if tl.crossing != c {
                Some((Slot::new(child_index(tl.crossing), tl.pos), false))
            } else {
                None
            };
            if let Some(hint) = hint {
                hints.insert(root, hint);
            }
        }
        let code = PlanarCode {
            crossings,
            free_loops: self.free_loops + closed.len(),
        };
        let hint_fn = |label: usize| hints.get(&label).copied();
        let normalized = normalize(&code, DirectionRule::Prefer(&hint_fn))?;
        let origin = (0..self.crossings.len())
            .filter(|&x| x != c)
            .zip(normalized.rotated.iter())
            .map(|(x, &r)| (x, r))
            .collect();
        Ok((normalized.diagram, Lineage { origin }))
    }

    /// Groups of crossings joined by edges.
    fn pieces(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.crossings.len());
        for e in 0..self.edge_count() {
            uf.union(self.heads[e].crossing, self.tails[e].crossing);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.crossings.len() {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Whether the underlying plane curve is connected (the crossingless
    /// unknot counts as connected).
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_loops == 1;
        }
        self.free_loops == 0 && self.pieces().len() == 1
    }

    /// Connected pieces as separate diagrams; every free loop becomes an unknot.
    pub fn split_components(&self) -> Vec<LinkDiagram> {
        let mut out = Vec::new();
        for piece in self.pieces() {
            let index: HashMap<usize, usize> =
                piece.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let crossings = piece.iter().map(|&x| self.crossings[x]).collect();
            let code = PlanarCode {
                crossings,
                free_loops: 0,
            };
            let hint = |label: usize| {
                let h = self.heads[label];
                Some((Slot::new(index[&h.crossing], h.pos), true))
            };
            let normalized =
                normalize(&code, DirectionRule::Prefer(&hint)).expect("piece of a valid diagram");
            out.push(normalized.diagram);
        }
        out.extend((0..self.free_loops).map(|_| LinkDiagram::unknot()));
        out
    }

    /// Crossings whose opposite corners lie in one region. Such a crossing
    /// can be untwisted; the smoothing that merges the other two corners
    /// gives an isotopic diagram.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let regions = self.regions();
        (0..self.crossings.len())
            .filter(|&x| {
                let f = regions.corner_face[x];
                f[0] == f[2] || f[1] == f[3]
            })
            .collect()
    }

    /// Removes nugatory crossings one at a time until none remain. When an
    /// orientation is supplied, the result carries the orientation of the
    /// untwisted link: the part on one side of each removed crossing has
    /// its direction reversed, as the half-turn that undoes the twist does.
    pub fn simplify(&self, o: Option<&Orientation>) -> (LinkDiagram, Option<Orientation>) {
        let mut d = self.clone();
        let mut o = o.cloned();
        loop {
            let regions = d.regions();
            let found = (0..d.crossings.len()).find_map(|x| {
                let f = regions.corner_face[x];
                if f[0] == f[2] {
                    Some((x, 0))
                } else if f[1] == f[3] {
                    Some((x, 1))
                } else {
                    None
                }
            });
            let Some((x, k)) = found else { break };
            let kind = if k == 0 {
                Resolution::One
            } else {
                Resolution::Zero
            };
            let far_side = d.side_edges(x, [(k + 3) % 4, k]);
            let (child, lineage) = d.smooth(x, kind).expect("valid crossing");
            o = o.map(|o| {
                induce_orientation(&child, &lineage, |s| {
                    d.is_head(s, &o) != far_side.contains(&d.edge_at(s))
                })
                .expect("untwisting a nugatory crossing keeps a consistent orientation")
            });
            d = child;
        }
        (d, o)
    }

    /// Edges reachable from the given positions of crossing `x` without
    /// passing through `x`.
    fn side_edges(&self, x: usize, start: [usize; 2]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = start.iter().map(|&p| self.crossings[x][p]).collect();
        while let Some(e) = stack.pop() {
            if !seen.insert(e) {
                continue;
            }
            for s in [self.heads[e], self.tails[e]] {
                if s.crossing != x {
                    stack.extend(
                        self.crossings[s.crossing]
                            .iter()
                            .copied()
                            .filter(|f| !seen.contains(f)),
                    );
                }
            }
        }
        seen
    }
}

/// Orientation of `child` agreeing with the parent's edge directions, where
/// `parent_head(slot)` says whether a parent slot is a head. `None` when the
/// directions conflict along some child component.
pub(crate) fn induce_orientation(
    child: &LinkDiagram,
    lineage: &Lineage,
    parent_head: impl Fn(Slot) -> bool,
) -> Option<Orientation> {
    let mut dirs = Vec::with_capacity(child.n_components());
    for comp in &child.components {
        let mut dir: Option<bool> = None;
        for &e in comp {
            for (s, is_default_head) in [(child.heads[e], true), (child.tails[e], false)] {
                let want = parent_head(lineage.parent_slot(s)) == is_default_head;
                match dir {
                    None => dir = Some(want),
                    Some(d) if d != want => return None,
                    _ => {}
                }
            }
        }
        dirs.push(dir.unwrap_or(true));
    }
    dirs.extend(std::iter::repeat_n(true, child.free_loops));
    Some(Orientation::new(dirs))
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return match self.free_loops {
                1 => write!(f, "unknot"),
                k => write!(f, "unlink({k})"),
            };
        }
        write!(f, "[")?;
        for (i, t) in self.pd_code().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{},{},{}]", t[0], t[1], t[2], t[3])?;
        }
        write!(f, "]")?;
        if self.free_loops > 0 {
            write!(f, " + {} loop(s)", self.free_loops)?;
        }
        Ok(())
    }
}
