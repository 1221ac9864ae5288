//! Certificates on random braid closures, and 2-bridge links against the
//! lens space formulas.

use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use qalink::diagram::{braid_closure, rational_link, two_bridge_cover, BraidWord, Orientation};
use qalink::lattice::{casson_walker_lens_oracle, lens_d_multiset, CharLattice};
use qalink::polynomial::{jones, log_derivative_at_minus_one};
use qalink::qa::{
    d_from_certificate, qa_search, sigma_from_certificate, validate, validate_serialized,
    QACertificate, QAError,
};
use qalink::surfaces::{determinant_any, goeritz, signature_gl, ColoringId};

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|k| {
        let g = (1..k as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(g, 1..=7).prop_map(move |gens| BraidWord::new(k, gens).unwrap())
    })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_recompute_the_signature(w in braid()) {
        let d = braid_closure(&w).unwrap();
        let cert = match qa_search(&d, 100_000) {
            Ok(c) => c,
            Err(QAError::ZeroDeterminant) => {
                prop_assert_eq!(determinant_any(&d.simplify(None).0), 0);
                return Ok(());
            }
            Err(QAError::NotFound) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(validate(&cert, &d).is_ok());
        for o in Orientation::quasi(&d) {
            let s = signature_gl(&d, &o).unwrap();
            prop_assert_eq!(sigma_from_certificate(&cert, &d, &o).unwrap(), s);
            prop_assert_eq!(d_from_certificate(&cert, &d, &o).unwrap() * q(-4, 1), q(s, 1));
        }
        let text = serde_json::to_string(&cert).unwrap();
        let back: QACertificate = serde_json::from_str(&text).unwrap();
        prop_assert!(validate_serialized(&back).is_ok());
        prop_assert_eq!(back.to_tree_string(), cert.to_tree_string());
    }

    #[test]
    fn rational_links_cover_lens_spaces(p in 2i64..=30, q0 in 1i64..30) {
        let qq = q0 % p;
        prop_assume!(qq > 0 && p.gcd(&qq) == 1);
        let d = rational_link(p, qq).unwrap();
        prop_assert_eq!(determinant_any(&d), p as u64);
        let (lp, lq) = two_bridge_cover(p, qq);
        // The smaller definite coloring; a positive definite G describes the
        // cover with reversed orientation through the lattice of -G.
        let g = [ColoringId::White, ColoringId::Black]
            .into_iter()
            .map(|c| goeritz(&d, c).unwrap())
            .filter(|g| g.is_negative_definite() || g.is_positive_definite())
            .min_by_key(|g| g.rank())
            .expect("alternating diagram");
        let sign = if g.is_negative_definite() { 1 } else { -1 };
        let gram = g.matrix.iter().map(|r| r.iter().map(|x| sign * x).collect()).collect();
        let lat = CharLattice::new(gram).unwrap();
        let read = |v: BigRational| if sign > 0 { v } else { -v };
        let mut all: Vec<BigRational> = lat.all_d(16).unwrap().into_iter().map(|(_, v)| read(v)).collect();
        all.sort();
        prop_assert_eq!(all, lens_d_multiset(lp, lq).unwrap());

        let lambda = casson_walker_lens_oracle(lp, lq).unwrap();
        let mut lhs: Vec<BigRational> =
            lat.spin_d_multiset(16).unwrap().into_iter().map(|x| (read(x) + &lambda) / q(2, 1)).collect();
        lhs.sort();
        let mut rhs: Vec<BigRational> = Orientation::quasi(&d)
            .iter()
            .map(|o| -log_derivative_at_minus_one(&jones(&d, o).unwrap()).unwrap() / q(12, 1))
            .collect();
        rhs.sort();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn figure_eight_and_trefoil_certificates() {
    use qalink::diagram::parse_pd;
    let fig8 = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]").unwrap();
    let c = qa_search(&fig8, qalink::qa::DEFAULT_QA_BUDGET).unwrap();
    let top = c.nodes()[0].det;
    assert_eq!(top[0], 5);
    assert_eq!(top[1] + top[2], 5);
    assert!(validate(&c, &fig8).is_ok());
    let o = Orientation::default_for(&fig8);
    assert_eq!(sigma_from_certificate(&c, &fig8, &o).unwrap(), 0);

    let trefoil = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
    let c = qa_search(&trefoil, 1000).unwrap();
    let o = Orientation::default_for(&trefoil);
    assert_eq!(sigma_from_certificate(&c, &trefoil, &o).unwrap(), -2);
    assert_eq!(d_from_certificate(&c, &trefoil, &o).unwrap(), q(1, 2));
    assert_eq!(c.nodes()[0].det[0], 3);
}
