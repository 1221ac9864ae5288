use super::*;
use crate::diagram::{parse_braid, parse_pd};
use crate::polynomial::frac;
use crate::surfaces::signature_gl;

const TREFOIL: &str = "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]";
const HOPF: &str = "[[1,3,2,4],[3,1,4,2]]";
const FIG8: &str = "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]";

fn pd(s: &str) -> LinkDiagram {
    parse_pd(s).unwrap()
}

#[test]
fn unknot_is_a_leaf() {
    let u = LinkDiagram::unknot();
    let c = qa_search(&u, 10).unwrap();
    assert!(c.is_leaf());
    let o = Orientation::default_for(&u);
    assert_eq!(sigma_from_certificate(&c, &u, &o).unwrap(), 0);
    assert_eq!(d_from_certificate(&c, &u, &o).unwrap(), frac(0, 1));
    assert!(qa_search(&pd("[[1,1,2,2]]"), 10).unwrap().is_leaf());
}

#[test]
fn trefoil_certificate() {
    let d = pd(TREFOIL);
    let c = qa_search(&d, DEFAULT_QA_BUDGET).unwrap();
    validate(&c, &d).unwrap();
    let o = Orientation::default_for(&d);
    assert_eq!(sigma_from_certificate(&c, &d, &o).unwrap(), -2);
    assert_eq!(d_from_certificate(&c, &d, &o).unwrap(), frac(1, 2));
    let QACertificate::Node(root) = &c else {
        panic!()
    };
    assert_eq!(root.det, [3, 1, 2]);
    assert!(!root.mirrored);
    let m = d.mirror();
    let cm = qa_search(&m, DEFAULT_QA_BUDGET).unwrap();
    assert_eq!(sigma_from_certificate(&cm, &m, &o).unwrap(), 2);
    assert_eq!(d_from_certificate(&cm, &m, &o).unwrap(), frac(-1, 2));
}

#[test]
fn hopf_certificate_all_orientations() {
    let d = pd(HOPF);
    let c = qa_search(&d, DEFAULT_QA_BUDGET).unwrap();
    validate(&c, &d).unwrap();
    for o in Orientation::all(&d) {
        let s = sigma_from_certificate(&c, &d, &o).unwrap();
        assert_eq!(s, signature_gl(&d, &o).unwrap());
        assert_eq!(frac(-s, 4), d_from_certificate(&c, &d, &o).unwrap());
    }
    let o = Orientation::default_for(&d);
    assert_eq!(sigma_from_certificate(&c, &d, &o).unwrap(), -1);
    assert_eq!(d_from_certificate(&c, &d, &o).unwrap(), frac(1, 4));
}

#[test]
fn figure_eight_certificate() {
    let d = pd(FIG8);
    let c = qa_search(&d, DEFAULT_QA_BUDGET).unwrap();
    validate(&c, &d).unwrap();
    let o = Orientation::default_for(&d);
    assert_eq!(sigma_from_certificate(&c, &d, &o).unwrap(), 0);
}

#[test]
fn split_link_has_zero_determinant() {
    let d = parse_braid("", 2).unwrap();
    assert_eq!(qa_search(&d, 100), Err(QAError::ZeroDeterminant));
}

#[test]
fn budget_exhaustion() {
    let d = pd(FIG8);
    assert_eq!(qa_search(&d, 1), Err(QAError::BudgetExceeded { budget: 1 }));
}

#[test]
fn tree_rendering_and_roundtrip() {
    let d = pd(TREFOIL);
    let c = qa_search(&d, DEFAULT_QA_BUDGET).unwrap();
    let text = c.to_tree_string();
    assert!(text.starts_with("crossing "));
    assert!(text.contains("det 3 = 1 + 2"));
    assert_eq!(text.lines().count(), c.node_count());
    let json = serde_json::to_string(&c).unwrap();
    let back: QACertificate = serde_json::from_str(&json).unwrap();
    validate_serialized(&back).unwrap();
    assert_eq!(back.to_tree_string(), text);
}

#[test]
fn tampered_certificate_rejected() {
    let d = pd(TREFOIL);
    let mut c = qa_search(&d, DEFAULT_QA_BUDGET).unwrap();
    if let QACertificate::Node(n) = &mut c {
        n.det = [3, 2, 1];
    }
    assert!(matches!(
        validate(&c, &d),
        Err(QAError::InvalidCertificate(_))
    ));
}
