use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::normalize::{normalize, DirectionRule, PlanarCode};
use super::{DiagramError, LinkDiagram, Slot, UnionFind};

/// A braid word: `i` is the positive generator crossing strands `i` and
/// `i + 1` (1-based), `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub gens: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, gens: Vec<i32>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::MalformedBraid(
                "braid needs at least one strand".into(),
            ));
        }
        if let Some(&g) = gens
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(DiagramError::MalformedBraid(format!(
                "generator {g} out of range for {strands} strands"
            )));
        }
        Ok(BraidWord { strands, gens })
    }

    /// Accepts `s1 s2^-1 s1`, `1 -2 1`, `[1,-2,1]` and mixtures.
    pub fn parse(word: &str, strands: usize) -> Result<Self, DiagramError> {
        let inner = word.trim().trim_start_matches('[').trim_end_matches(']');
        let mut gens = Vec::new();
        for tok in inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            gens.push(parse_generator(tok)?);
        }
        BraidWord::new(strands, gens)
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            gens: self.gens.iter().map(|g| -g).collect(),
        }
    }
}

fn parse_generator(tok: &str) -> Result<i32, DiagramError> {
    let bad = || DiagramError::MalformedBraid(format!("bad generator `{tok}`"));
    let Some(rest) = tok.strip_prefix(['s', 'S']) else {
        return tok.parse().map_err(|_| bad());
    };
    let (index, inverse) = match rest.split_once('^') {
        Some((i, "-1")) => (i, true),
        Some((i, "1")) => (i, false),
        Some(_) => return Err(bad()),
        None => (rest, false),
    };
    let i: i32 = index.parse().map_err(|_| bad())?;
    if i <= 0 {
        return Err(bad());
    }
    Ok(if inverse { -i } else { i })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.gens {
            if *g > 0 {
                write!(f, " s{g}")?;
            } else {
                write!(f, " s{}^-1", -g)?;
            }
        }
        Ok(())
    }
}

/// Crossings of a braid read bottom to top, strands moving up. Returns the
/// code, the slot where each label enters its crossing, and the final
/// (top) label at each strand position.
fn braid_crossings(
    strands: usize,
    gens: &[i32],
    first_label: usize,
) -> (Vec<[usize; 4]>, HashMap<usize, Slot>, Vec<usize>) {
    let mut cur: Vec<usize> = (first_label..first_label + strands).collect();
    let mut next = first_label + strands;
    let mut crossings = Vec::with_capacity(gens.len());
    let mut enters = HashMap::new();
    for &g in gens {
        let a = g.unsigned_abs() as usize - 1;
        let b = a + 1;
        let (la, lb) = (cur[a], cur[b]);
        let (ta, tb) = (next, next + 1);
        next += 2;
        let x = crossings.len();
        if g > 0 {
            crossings.push([lb, tb, ta, la]);
            enters.insert(lb, Slot::new(x, 0));
            enters.insert(la, Slot::new(x, 3));
        } else {
            crossings.push([la, lb, tb, ta]);
            enters.insert(la, Slot::new(x, 0));
            enters.insert(lb, Slot::new(x, 1));
        }
        cur[a] = ta;
        cur[b] = tb;
    }
    (crossings, enters, cur)
}

fn relabel(crossings: &mut [[usize; 4]], uf: &mut UnionFind) {
    for t in crossings.iter_mut() {
        *t = t.map(|e| uf.find(e));
    }
}

/// Closure of a braid, oriented with every strand moving up.
pub fn braid_closure(word: &BraidWord) -> Result<LinkDiagram, DiagramError> {
    let k = word.strands;
    let (mut crossings, enters, top) = braid_crossings(k, &word.gens, 0);
    let mut uf = UnionFind::new(k + 2 * word.gens.len());
    for (j, &t) in top.iter().enumerate() {
        uf.union(t, j);
    }
    relabel(&mut crossings, &mut uf);
    let used: std::collections::HashSet<usize> = crossings.iter().flatten().copied().collect();
    let free_loops = (0..k)
        .filter(|&j| uf.find(j) == j && !used.contains(&j))
        .count();
    let mut hints: HashMap<usize, Slot> = HashMap::new();
    for (&label, &slot) in &enters {
        hints.entry(uf.find(label)).or_insert(slot);
    }
    let code = PlanarCode {
        crossings,
        free_loops,
    };
    let hint = |label: usize| hints.get(&label).map(|&s| (s, true));
    let d = normalize(&code, DirectionRule::Prefer(&hint))?.diagram;
    Ok(d.with_braid(word.clone()))
}

/// Continued fraction of `p/q` with positive terms and odd length.
pub(crate) fn odd_continued_fraction(p: i64, q: i64) -> Vec<i64> {
    let (mut a, mut b) = (p, q);
    let mut cf = Vec::new();
    while b != 0 {
        cf.push(a / b);
        (a, b) = (b, a % b);
    }
    if cf.len() % 2 == 0 {
        let last = cf.pop().unwrap();
        if last > 1 {
            cf.push(last - 1);
            cf.push(1);
        } else {
            *cf.last_mut().unwrap() += 1;
        }
    }
    cf
}

/// The 2-bridge link with fraction `p/q` (`0 < q < p`, coprime, or the
/// unknot for `p = 1`), drawn as the 4-plat of
/// `s2^a1 s1^-a2 s2^a3 ...` for the odd-length continued fraction
/// `[a1, ..., an]` of `p/q`. Its branched double cover is the boundary of
/// the negative definite linear plumbing for `p/(p - q)`; see
/// [`two_bridge_cover`].
pub fn rational_link(p: i64, q: i64) -> Result<LinkDiagram, DiagramError> {
    if p == 1 && q == 0 {
        return Ok(LinkDiagram::unknot());
    }
    if p < 2 || q <= 0 || q >= p || p.gcd(&q) != 1 {
        return Err(DiagramError::BadFraction { p, q });
    }
    let mut gens = Vec::new();
    for (i, &a) in odd_continued_fraction(p, q).iter().enumerate() {
        let g = if i % 2 == 0 { 2 } else { -1 };
        gens.extend(std::iter::repeat_n(g, a as usize));
    }
    let (mut crossings, _, top) = braid_crossings(4, &gens, 0);
    let mut uf = UnionFind::new(4 + 2 * gens.len());
    uf.union(0, 1);
    uf.union(2, 3);
    uf.union(top[0], top[1]);
    uf.union(top[2], top[3]);
    relabel(&mut crossings, &mut uf);
    let code = PlanarCode {
        crossings,
        free_loops: 0,
    };
    let none = |_: usize| None;
    Ok(normalize(&code, DirectionRule::Prefer(&none))?.diagram)
}

/// Plumbing parameters `(p, p - q)` whose boundary is the branched double
/// cover of [`rational_link`]`(p, q)`, oriented as the boundary of its
/// negative definite Goeritz lattice.
pub fn two_bridge_cover(p: i64, q: i64) -> (i64, i64) {
    if p == 1 {
        (1, 0)
    } else {
        (p, p - q)
    }
}
