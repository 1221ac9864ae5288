use std::collections::{BTreeMap, HashSet};

use super::{DiagramError, LinkDiagram, Slot};

/// Crossing data before orientation is fixed: each tuple lists four edge
/// labels counterclockwise with the under-strand at positions 0 and 2.
/// Labels are arbitrary and need not be dense.
#[derive(Clone, Debug)]
pub(crate) struct PlanarCode {
    pub crossings: Vec<[usize; 4]>,
    pub free_loops: usize,
}

/// How the traversal direction of each component is chosen.
pub(crate) enum DirectionRule<'a> {
    /// Position 0 of every tuple is the incoming under-strand; any component
    /// passing under must agree with it everywhere. Components that only
    /// pass over run in the direction of increasing labels.
    UnderStrands,
    /// For a label, optionally a slot together with whether it should be the
    /// head (`true`) or tail of that edge. The smallest hinted label in a
    /// component decides.
    Prefer(&'a dyn Fn(usize) -> Option<(Slot, bool)>),
}

pub(crate) struct Normalized {
    pub diagram: LinkDiagram,
    /// Crossings whose tuple was rotated by two positions.
    pub rotated: Vec<bool>,
}

pub(crate) fn normalize(
    code: &PlanarCode,
    rule: DirectionRule<'_>,
) -> Result<Normalized, DiagramError> {
    let mut slots: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (x, tuple) in code.crossings.iter().enumerate() {
        for (p, &label) in tuple.iter().enumerate() {
            slots.entry(label).or_default().push(Slot::new(x, p));
        }
    }
    if let Some((&label, s)) = slots.iter().find(|(_, s)| s.len() != 2) {
        return Err(DiagramError::EdgeMultiplicity {
            label,
            count: s.len(),
        });
    }
    let other = |label: usize, s: Slot| -> Slot {
        let pair = &slots[&label];
        if pair[0] == s {
            pair[1]
        } else {
            pair[0]
        }
    };

    let mut visited: HashSet<usize> = HashSet::new();
    let mut traced: Vec<Vec<(usize, Slot)>> = Vec::new();
    for (&start, pair) in &slots {
        if visited.contains(&start) {
            continue;
        }
        let mut seq: Vec<(usize, Slot)> = Vec::new();
        let mut seen_here: HashSet<usize> = HashSet::new();
        let (mut label, mut head) = (start, pair[0]);
        loop {
            if !seen_here.insert(label) {
                return Err(DiagramError::TraceFailure(format!(
                    "edge {label} traversed twice on one component"
                )));
            }
            seq.push((label, head));
            let tail_next = Slot::new(head.crossing, (head.pos + 2) % 4);
            let next = code.crossings[tail_next.crossing][tail_next.pos];
            let next_head = other(next, tail_next);
            if next == start {
                if next_head != pair[0] {
                    return Err(DiagramError::TraceFailure(format!(
                        "component through edge {start} does not close up"
                    )));
                }
                break;
            }
            label = next;
            head = next_head;
        }
        visited.extend(seen_here);

        let reverse = match &rule {
            DirectionRule::UnderStrands => {
                let (mut agree, mut disagree) = (false, false);
                for &(l, h) in &seq {
                    let t = other(l, h);
                    match (h.pos, t.pos) {
                        (0, _) | (_, 2) => agree = true,
                        _ => {}
                    }
                    match (h.pos, t.pos) {
                        (2, _) | (_, 0) => disagree = true,
                        _ => {}
                    }
                }
                if agree && disagree {
                    return Err(DiagramError::TraceFailure(format!(
                        "under-strand directions disagree along the component through edge {start}"
                    )));
                }
                if !agree && !disagree {
                    // Over-strands only: follow increasing labels.
                    seq.len() > 1 && seq[1].0 > seq[seq.len() - 1].0
                } else {
                    disagree
                }
            }
            DirectionRule::Prefer(hint) => {
                let mut ordered: Vec<&(usize, Slot)> = seq.iter().collect();
                ordered.sort_by_key(|(l, _)| *l);
                ordered
                    .into_iter()
                    .find_map(|&(l, h)| hint(l).map(|(s, want_head)| (s == h) != want_head))
                    .unwrap_or(false)
            }
        };
        if reverse {
            let mut rev: Vec<(usize, Slot)> =
                seq.iter().rev().map(|&(l, h)| (l, other(l, h))).collect();
            let at = rev.iter().position(|(l, _)| *l == start).unwrap();
            rev.rotate_left(at);
            seq = rev;
        }
        traced.push(seq);
    }

    let mut new_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut heads: Vec<Slot> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for seq in &traced {
        let mut comp = Vec::with_capacity(seq.len());
        for &(l, h) in seq {
            let id = heads.len();
            new_id.insert(l, id);
            heads.push(h);
            comp.push(id);
        }
        components.push(comp);
    }

    let mut crossings: Vec<[usize; 4]> = code
        .crossings
        .iter()
        .map(|t| [new_id[&t[0]], new_id[&t[1]], new_id[&t[2]], new_id[&t[3]]])
        .collect();
    let mut rotated = vec![false; crossings.len()];
    for (x, tuple) in crossings.iter_mut().enumerate() {
        if heads[tuple[0]] != Slot::new(x, 0) {
            rotated[x] = true;
            tuple.rotate_left(2);
        }
    }
    if matches!(rule, DirectionRule::UnderStrands) && rotated.iter().any(|&r| r) {
        return Err(DiagramError::TraceFailure(
            "under-strand orientation inconsistent".into(),
        ));
    }
    for h in heads.iter_mut() {
        if rotated[h.crossing] {
            h.pos = (h.pos + 2) % 4;
        }
    }
    let diagram = LinkDiagram::assemble(crossings, components, heads, code.free_loops);
    Ok(Normalized { diagram, rotated })
}
