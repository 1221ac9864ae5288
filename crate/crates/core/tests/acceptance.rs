//! Acceptance criteria over the shipped corpus, one line per criterion.
//! Every comparison is exact equality of integers or rationals.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use qalink::linalg::{determinant, is_negative_definite, IntMatrix};
use qalink::surfaces::{goeritz, ColoringId};
use qalink::verify::{
    cmd_invariants, cmd_report, load_corpus, sweep, CertStatus, CheckKind, Definite, EntryKind,
    InvariantReport, OutputFormat, RunConfig, Verdict,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/links.txt")
}

fn failures<'a>(
    reports: impl IntoIterator<Item = &'a InvariantReport>,
    kind: CheckKind,
) -> Vec<String> {
    reports
        .into_iter()
        .filter_map(|r| match r.verdict(kind) {
            Verdict::Fail(m) => Some(format!("{}: {m}", r.name)),
            Verdict::Skipped(s) => Some(format!("{}: skipped({s})", r.name)),
            Verdict::Pass => None,
        })
        .collect()
}

fn summarize(count: usize, bad: Vec<String>, what: &str) -> Outcome {
    let ok = bad.is_empty() && count > 0;
    let detail = if bad.is_empty() {
        format!("{count} {what}")
    } else {
        format!("{} of {count} {what} failed: {}", bad.len(), bad.join("; "))
    };
    Outcome { ok, detail }
}

fn base_case(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    let r = cmd_invariants(cfg, "0_1").expect("unknot in corpus");
    let elapsed = start.elapsed();
    let zero = BigRational::zero();
    let o = &r.orientations[0];
    let mut bad = Vec::new();
    if r.determinant != Some(1) {
        bad.push(format!("det {:?}", r.determinant));
    }
    if o.sigma != Some(0) {
        bad.push(format!("sigma {:?}", o.sigma));
    }
    if r.lattice.as_ref().map(|l| l.spin.clone()) != Some(vec![zero.clone()])
        || o.d_certificate != Some(zero.clone())
    {
        bad.push("d".into());
    }
    if r.lambda != Some(zero.clone()) {
        bad.push("lambda".into());
    }
    if o.tau != Some(zero) {
        bad.push("tau".into());
    }
    if r.failed() {
        bad.push("failed checks".into());
    }
    if elapsed >= Duration::from_secs(1) {
        bad.push(format!("took {elapsed:?}"));
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("det 1, sigma 0, d 0, lambda 0, tau 0 in {elapsed:?}")
        } else {
            bad.join(", ")
        },
    }
}

fn theorem_multiset(reports: &[InvariantReport], alternating: &BTreeSet<String>) -> Outcome {
    let covered: Vec<&InvariantReport> = reports
        .iter()
        .filter(|r| alternating.contains(&r.name))
        .filter(|r| {
            r.lattice
                .as_ref()
                .is_some_and(|l| l.definite == Definite::Negative)
        })
        .collect();
    let missing = alternating.len() - covered.len();
    let mut out = summarize(
        covered.len(),
        failures(covered, CheckKind::TheoremLattice),
        "alternating tabulated links",
    );
    if missing > 0 {
        out.ok = false;
        out.detail +=
            &format!("; {missing} alternating links without a negative definite coloring");
    }
    out
}

fn certificate_recursion(reports: &[InvariantReport]) -> Outcome {
    let certified: Vec<&InvariantReport> = reports
        .iter()
        .filter(|r| r.certificate.status == CertStatus::Found && r.crossings > 0)
        .collect();
    let nodes: usize = certified
        .iter()
        .map(|r| r.certificate.nodes.unwrap_or(0))
        .sum();
    let mut bad = failures(certified.iter().copied(), CheckKind::TheoremCertificate);
    bad.extend(failures(certified.iter().copied(), CheckKind::Certificate));
    let mut out = summarize(certified.len(), bad, "certified links");
    out.detail += &format!(", {nodes} certificate nodes with det L = det L0 + det L1");
    if certified.len() < 25 {
        out.ok = false;
        out.detail += " (fewer than 25)";
    }
    out
}

fn signature_recursion(reports: &[InvariantReport]) -> Outcome {
    let certified: Vec<&InvariantReport> = reports
        .iter()
        .filter(|r| r.certificate.status == CertStatus::Found)
        .collect();
    let positive: usize = certified
        .iter()
        .map(|r| r.certificate.recursion_positive)
        .sum();
    let steps: usize = certified
        .iter()
        .map(|r| r.certificate.recursion_steps)
        .sum();
    let bad = certified
        .iter()
        .filter_map(|r| match r.verdict(CheckKind::SignatureRecursion) {
            Verdict::Fail(m) => Some(format!("{}: {m}", r.name)),
            _ => None,
        })
        .collect();
    let mut out = summarize(positive, bad, "positive certified crossings");
    out.detail += &format!(" ({steps} oriented steps in all)");
    out
}

fn mirror(reports: &[InvariantReport]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter_map(|r| match r.verdict(CheckKind::Mirror) {
            Verdict::Fail(m) => Some(format!("{}: {m}", r.name)),
            _ => None,
        })
        .collect();
    let checked = reports
        .iter()
        .filter(|r| r.verdict(CheckKind::Mirror).is_pass())
        .count();
    let skipped: Vec<&str> = reports
        .iter()
        .filter(|r| matches!(r.verdict(CheckKind::Mirror), Verdict::Skipped(_)))
        .map(|r| r.name.as_str())
        .collect();
    let with_lattice = reports
        .iter()
        .filter(|r| r.lattice.is_some() && r.verdict(CheckKind::Mirror).is_pass())
        .count();
    let mut out = summarize(checked, bad, "links");
    out.detail += &format!(", {with_lattice} with both lattice paths");
    if !skipped.is_empty() {
        out.detail += &format!(
            ", signature undefined for split diagram(s) {}",
            skipped.join(" ")
        );
    }
    out
}

fn spin_count(reports: &[InvariantReport]) -> Outcome {
    let with: Vec<&InvariantReport> = reports.iter().filter(|r| r.lattice.is_some()).collect();
    summarize(
        with.len(),
        failures(with, CheckKind::SpinCount),
        "links with a definite coloring",
    )
}

/// Negative definite forms of rank at most 3 and `|det| <= 60`: every one
/// with diagonal in `-4..=-1` and off-diagonal in `-1..=1`, diagonal down
/// to `-6` and off-diagonal up to 2 in rank at most 2, and every such
/// Goeritz form in the corpus.
fn small_lattices(corpus_forms: Vec<IntMatrix>) -> Vec<IntMatrix> {
    let mut out = BTreeSet::new();
    let small =
        |g: &IntMatrix| is_negative_definite(g) && determinant(g).magnitude() <= &60u32.into();
    for a in 1..=6 {
        out.insert(vec![vec![-a]]);
        for b in 1..=6 {
            for x in -2..=2 {
                out.insert(vec![vec![-a, x], vec![x, -b]]);
            }
        }
    }
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for x in -1..=1 {
                    for y in -1..=1 {
                        for z in -1..=1 {
                            out.insert(vec![vec![-a, x, y], vec![x, -b, z], vec![y, z, -c]]);
                        }
                    }
                }
            }
        }
    }
    out.extend(corpus_forms);
    out.into_iter()
        .filter(|g| !g.is_empty() && small(g))
        .collect()
}

fn oracles(reports: &[InvariantReport], cfg: &RunConfig) -> Outcome {
    let connected: Vec<&InvariantReport> = reports.iter().filter(|r| r.connected).collect();
    let braids: Vec<&InvariantReport> = reports
        .iter()
        .filter(|r| r.kind == EntryKind::Braid && r.connected)
        .collect();
    let lens: Vec<&InvariantReport> = reports.iter().filter(|r| r.two_bridge.is_some()).collect();
    let mut bad = failures(connected.iter().copied(), CheckKind::Determinant);
    bad.extend(failures(braids.iter().copied(), CheckKind::Seifert));
    bad.extend(failures(lens.iter().copied(), CheckKind::Lens));

    let mut forms = Vec::new();
    for e in load_corpus(&cfg.corpus).unwrap() {
        let d = e.diagram().unwrap();
        if !d.is_connected() {
            continue;
        }
        for c in [ColoringId::White, ColoringId::Black] {
            forms.push(goeritz(&d, c).unwrap().matrix);
        }
    }
    let lattices = small_lattices(forms);
    for g in &lattices {
        if let Err(e) = std::panic::catch_unwind(|| common::check_against_box(g)) {
            bad.push(format!(
                "box enumeration {g:?}: {:?}",
                e.downcast_ref::<String>()
            ));
        }
    }
    let ok = bad.is_empty() && !braids.is_empty() && !lens.is_empty();
    let detail = format!(
        "determinant on {} connected, Seifert on {} braids, lens on {} 2-bridge, box on {} lattices{}",
        connected.len(),
        braids.len(),
        lens.len(),
        lattices.len(),
        if bad.is_empty() { String::new() } else { format!("; failed: {}", bad.join("; ")) }
    );
    Outcome { ok, detail }
}

fn corollary(reports: &[InvariantReport]) -> Outcome {
    let lens: Vec<&InvariantReport> = reports.iter().filter(|r| r.two_bridge.is_some()).collect();
    let mut bad = failures(lens.iter().copied(), CheckKind::Corollary);
    bad.extend(failures(lens.iter().copied(), CheckKind::Mullins));
    summarize(lens.len(), bad, "2-bridge links, lambda from Dedekind sums")
}

fn determinism(cfg: &RunConfig) -> Outcome {
    let dir = std::env::temp_dir().join(format!("qalink-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut bad = Vec::new();
    for format in [OutputFormat::Json, OutputFormat::Csv] {
        let mut texts = Vec::new();
        for (i, workers) in [None, None, Some(1), Some(3)].into_iter().enumerate() {
            let mut c = cfg.clone();
            c.format = format;
            c.workers = workers;
            let path = dir.join(format!("run{i}"));
            cmd_report(&c, &path).unwrap();
            texts.push(std::fs::read(&path).unwrap());
        }
        if texts[0] != texts[1] {
            bad.push(format!("{format:?} reruns differ"));
        }
        if texts[2] != texts[0] || texts[3] != texts[0] {
            bad.push(format!("{format:?} differs with the worker count"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            "JSON and CSV reruns byte-identical, also across 1 and 3 workers".into()
        } else {
            bad.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::new(corpus());
    let start = Instant::now();
    let reports = sweep(&cfg).expect("corpus sweep");
    let sweep_time = start.elapsed();

    let alternating: BTreeSet<String> = load_corpus(&cfg.corpus)
        .unwrap()
        .into_iter()
        .filter(|e| e.kind() == EntryKind::Pd)
        .filter(|e| e.diagram().unwrap().is_alternating())
        .map(|e| e.name)
        .collect();

    let results = [
        (1, "base case (unknot)", base_case(&cfg)),
        (
            2,
            "signature vs Spin correction terms, alternating corpus",
            theorem_multiset(&reports, &alternating),
        ),
        (
            3,
            "certificate recursion for d",
            certificate_recursion(&reports),
        ),
        (
            4,
            "signature recursion at positive crossings",
            signature_recursion(&reports),
        ),
        (5, "mirror antisymmetry", mirror(&reports)),
        (6, "Spin count 2^(n-1)", spin_count(&reports)),
        (7, "oracle equivalences", oracles(&reports, &cfg)),
        (
            8,
            "correction terms, Casson-Walker and Jones at -1",
            corollary(&reports),
        ),
        (9, "deterministic reports", determinism(&cfg)),
    ];
    println!(
        "corpus: {} links analyzed in {:?}",
        reports.len(),
        sweep_time
    );
    let pairs: usize = reports.iter().map(|r| r.orientations.len()).sum();
    println!("corpus: {pairs} (link, quasi-orientation) pairs");
    let mut all = true;
    for (id, title, o) in &results {
        all &= o.ok;
        println!(
            "criterion {id} [{}] {title}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
