use super::construct::{braid_closure, BraidWord};
use super::normalize::{normalize, DirectionRule, PlanarCode};
use super::{DiagramError, LinkDiagram};

/// Parses a PD code such as `[[1,5,2,4],[3,1,4,6],[5,3,6,2]]`.
///
/// Each tuple starts at the incoming under-strand and runs counterclockwise.
/// `unknot` and `[]` give the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("unknot") {
        return Ok(LinkDiagram::unknot());
    }
    let raw: Vec<Vec<i64>> =
        serde_json::from_str(text).map_err(|e| DiagramError::MalformedPD(format!("{e}")))?;
    if raw.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    let mut crossings = Vec::with_capacity(raw.len());
    for t in &raw {
        if t.len() != 4 {
            return Err(DiagramError::MalformedPD(format!(
                "crossing {t:?} does not have 4 entries"
            )));
        }
        if t.iter().any(|&e| e < 0) {
            return Err(DiagramError::MalformedPD(format!(
                "negative label in {t:?}"
            )));
        }
        crossings.push([t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize]);
    }
    let code = PlanarCode {
        crossings,
        free_loops: 0,
    };
    let d = normalize(&code, DirectionRule::UnderStrands)?.diagram;
    check_planar(&d)?;
    Ok(d)
}

pub(crate) fn check_planar(d: &LinkDiagram) -> Result<(), DiagramError> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(());
    }
    let pieces = d.pieces().len();
    let faces = d.regions().count;
    if faces != n + 2 * pieces {
        return Err(DiagramError::NonPlanar(format!(
            "{n} crossings in {pieces} piece(s) bound {faces} faces, expected {}",
            n + 2 * pieces
        )));
    }
    Ok(())
}

/// Closure of a braid word on `strands` strands, e.g. `s1 s2^-1 s1` or
/// `1 -2 1`.
pub fn parse_braid(word: &str, strands: usize) -> Result<LinkDiagram, DiagramError> {
    braid_closure(&BraidWord::parse(word, strands)?)
}
