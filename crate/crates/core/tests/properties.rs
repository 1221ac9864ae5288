//! Structural properties over random braid closures and braid words that
//! differ by braid relations, conjugation or stabilization.

use proptest::prelude::*;
use qalink::diagram::{braid_closure, BraidWord, LinkDiagram, Orientation, Resolution};
use qalink::polynomial::{
    determinant_from_jones, jones, kauffman_bracket, log_derivative_at_minus_one, LaurentPoly,
};
use qalink::surfaces::{
    determinant_goeritz, goeritz, seifert_signature, signature_from, signature_gl, ColoringId,
};

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |k| {
        let g = (1..k as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(g, 0..=max_len).prop_map(move |gens| BraidWord::new(k, gens).unwrap())
    })
}

fn closure(w: &BraidWord) -> LinkDiagram {
    braid_closure(w).unwrap()
}

fn a_shift(p: &LaurentPoly, k: i64) -> LaurentPoly {
    p.shift(k)
}

fn braid_orientation(d: &LinkDiagram) -> Orientation {
    Orientation::default_for(d)
}

/// Braid-orientation invariants that must survive Markov moves.
fn invariants(w: &BraidWord) -> (LaurentPoly, Option<i64>) {
    let d = closure(w);
    let o = braid_orientation(&d);
    let v = jones(&d, &o).unwrap();
    let s = if d.is_connected() {
        Some(signature_gl(&d, &o).unwrap())
    } else {
        None
    };
    (v, s)
}

/// Jones polynomials agree, and signatures agree where both are defined
/// (a move can join a split diagram).
fn same_link(a: &BraidWord, b: &BraidWord) -> Result<(), TestCaseError> {
    let (va, sa) = invariants(a);
    let (vb, sb) = invariants(b);
    prop_assert_eq!(va, vb);
    if let (Some(x), Some(y)) = (sa, sb) {
        prop_assert_eq!(x, y);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resolutions_drop_one_crossing(w in braid(4, 7)) {
        let d = closure(&w);
        for c in 0..d.crossing_count() {
            for kind in [Resolution::Zero, Resolution::One] {
                let r = d.resolve(c, kind).unwrap();
                prop_assert_eq!(r.crossing_count() + 1, d.crossing_count());
                prop_assert_eq!(r.edge_count() % 2, 0);
            }
        }
    }

    #[test]
    fn crossing_signs_follow_the_flip_rule(w in braid(4, 7)) {
        let d = closure(&w);
        prop_assume!(d.n_components() <= 4);
        for o in Orientation::all(&d) {
            let base = d.crossing_signs(&o).0;
            for k in 0..d.n_components() {
                let flipped = d.crossing_signs(&o.flip(k)).0;
                for (x, t) in d.crossings().iter().enumerate() {
                    let under = d.component_of(t[0]) == k;
                    let over = d.component_of(t[1]) == k;
                    let want = if under != over { -base[x] } else { base[x] };
                    prop_assert_eq!(flipped[x], want);
                }
            }
            prop_assert_eq!(d.crossing_signs(&o.reversed()).0, base);
        }
    }

    #[test]
    fn mirror_is_an_involution(w in braid(4, 8)) {
        let d = closure(&w);
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        let o = braid_orientation(&d);
        let m: Vec<i8> = d.mirror().crossing_signs(&o).0;
        let s: Vec<i8> = d.crossing_signs(&o).0.iter().map(|x| -x).collect();
        prop_assert_eq!(m, s);
    }

    #[test]
    fn skein_relation_at_every_crossing(w in braid(4, 7)) {
        let d = closure(&w);
        let b = kauffman_bracket(&d).unwrap();
        for c in 0..d.crossing_count() {
            let one = kauffman_bracket(&d.resolve(c, Resolution::One).unwrap()).unwrap();
            let zero = kauffman_bracket(&d.resolve(c, Resolution::Zero).unwrap()).unwrap();
            prop_assert_eq!(&b, &(&a_shift(&one, 1) + &a_shift(&zero, -1)));
        }
    }

    #[test]
    fn jones_of_mirror_inverts_t(w in braid(4, 8)) {
        let d = closure(&w);
        let o = braid_orientation(&d);
        prop_assert_eq!(jones(&d.mirror(), &o).unwrap(), jones(&d, &o).unwrap().invert_variable());
    }

    #[test]
    fn determinant_is_orientation_independent_and_matches_goeritz(w in braid(4, 7)) {
        let d = closure(&w);
        prop_assume!(d.n_components() <= 4);
        let dets: Vec<u64> = Orientation::all(&d)
            .iter()
            .map(|o| determinant_from_jones(&jones(&d, o).unwrap()).unwrap())
            .collect();
        prop_assert!(dets.iter().all(|&x| x == dets[0]));
        if d.is_connected() {
            prop_assert_eq!(determinant_goeritz(&d).unwrap(), dets[0]);
        } else {
            prop_assert_eq!(dets[0], 0);
        }
    }

    #[test]
    fn signature_agrees_across_colorings_and_global_flip(w in braid(4, 8)) {
        let d = closure(&w);
        prop_assume!(d.is_connected() && d.n_components() <= 4);
        let white = goeritz(&d, ColoringId::White).unwrap();
        let black = goeritz(&d, ColoringId::Black).unwrap();
        for o in Orientation::all(&d) {
            let s = signature_from(&white, &d, &o);
            prop_assert_eq!(s, signature_from(&black, &d, &o));
            prop_assert_eq!(s, signature_from(&white, &d, &o.reversed()));
            prop_assert_eq!(-s, signature_gl(&d.mirror(), &o).unwrap());
        }
    }

    #[test]
    fn seifert_signature_matches_gordon_litherland(w in braid(5, 10)) {
        let d = closure(&w);
        prop_assume!(d.is_connected());
        let o = braid_orientation(&d);
        prop_assert_eq!(seifert_signature(&d, &o).unwrap(), signature_gl(&d, &o).unwrap());
    }

    #[test]
    fn lambda_from_jones_is_orientation_independent(w in braid(3, 8)) {
        let d = closure(&w);
        prop_assume!(d.is_connected() && determinant_goeritz(&d).unwrap() > 0);
        let lambdas: Vec<_> = Orientation::all(&d)
            .iter()
            .map(|o| {
                let r = log_derivative_at_minus_one(&jones(&d, o).unwrap()).unwrap();
                let s = signature_gl(&d, o).unwrap();
                -r / num_rational::BigRational::from_integer(6.into())
                    + num_rational::BigRational::new(s.into(), 4.into())
            })
            .collect();
        prop_assert!(lambdas.iter().all(|l| l == &lambdas[0]));
    }

    #[test]
    fn conjugation_preserves_invariants(w in braid(4, 7), shift in 0usize..7) {
        prop_assume!(!w.gens.is_empty());
        let k = shift % w.gens.len();
        let mut gens = w.gens[k..].to_vec();
        gens.extend_from_slice(&w.gens[..k]);
        let v = BraidWord::new(w.strands, gens).unwrap();
        prop_assert_eq!(invariants(&w), invariants(&v));
    }

    #[test]
    fn stabilization_preserves_invariants(w in braid(4, 7), positive in any::<bool>()) {
        let mut gens = w.gens.clone();
        let n = w.strands as i32;
        gens.push(if positive { n } else { -n });
        let v = BraidWord::new(w.strands + 1, gens).unwrap();
        same_link(&w, &v)?;
    }

    #[test]
    fn braid_relations_preserve_invariants(w in braid(4, 6), at in 0usize..7, i in 1i32..3) {
        prop_assume!(w.strands >= 3 && i + 1 < w.strands as i32);
        let at = at.min(w.gens.len());
        let mut a = w.gens.clone();
        let mut b = w.gens.clone();
        a.splice(at..at, [i, i + 1, i]);
        b.splice(at..at, [i + 1, i, i + 1]);
        let mut c = w.gens.clone();
        c.splice(at..at, [i, -i]);
        let a = BraidWord::new(w.strands, a).unwrap();
        let b = BraidWord::new(w.strands, b).unwrap();
        let c = BraidWord::new(w.strands, c).unwrap();
        prop_assert_eq!(invariants(&a), invariants(&b));
        same_link(&c, &w)?;
    }
}

#[test]
fn unlinks_are_special_cases() {
    use qalink::diagram::parse_braid;
    for k in 1..=4 {
        let d = LinkDiagram::unlink(k);
        let o = Orientation::default_for(&d);
        let v = jones(&d, &o).unwrap();
        let delta = LaurentPoly::from_terms([(-1, -1), (1, -1)]);
        assert_eq!(v, delta.pow(k as u32 - 1));
        assert_eq!(parse_braid("", k).unwrap().n_components(), k);
    }
}
