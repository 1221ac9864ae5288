//! The `qalink` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CORPUS: &str = "\
0_1 unknot
3_1 [[1,5,2,4],[3,1,4,6],[5,3,6,2]]
4_1 [[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]
L2a1 [[4,1,3,2],[2,3,1,4]]
2b_5_2 rational 5/2
unlink2 braid 2:
";

fn qalink(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qalink"))
        .current_dir(dir)
        .env_remove("QALINK_WORKERS")
        .args(args)
        .output()
        .unwrap()
}

fn setup() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("links.txt");
    std::fs::write(&corpus, CORPUS).unwrap();
    (dir, corpus)
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn verify_theorem_passes() {
    let (dir, corpus) = setup();
    let out = qalink(dir.path(), &["verify-theorem", corpus.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    assert!(stdout.contains("theorem: "), "{stdout}");
    assert!(stdout.contains(" 0 fail"), "{stdout}");
    assert!(stdout.contains("failures: []"), "{stdout}");
}

#[test]
fn verify_corollary_passes() {
    let (dir, corpus) = setup();
    let out = qalink(
        dir.path(),
        &[
            "verify-corollary",
            corpus.to_str().unwrap(),
            "--max-crossings",
            "4",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
}

#[test]
fn invariants_prints_json() {
    let (dir, corpus) = setup();
    let out = qalink(
        dir.path(),
        &["invariants", corpus.to_str().unwrap(), "--link", "3_1"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["determinant"], 3);
    assert_eq!(v["orientations"][0]["sigma"], -2);
    let missing = qalink(
        dir.path(),
        &["invariants", corpus.to_str().unwrap(), "--link", "nope"],
    );
    assert_eq!(missing.status.code(), Some(1));
    assert!(text(&missing.stderr).contains("nope"));
}

#[test]
fn qa_cert_exit_codes() {
    let (dir, corpus) = setup();
    let c = corpus.to_str().unwrap();
    let fig8 = qalink(dir.path(), &["qa-cert", c, "--link", "4_1", "--json"]);
    assert_eq!(fig8.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&fig8.stdout).unwrap();

    let split = qalink(dir.path(), &["qa-cert", c, "--link", "unlink2"]);
    assert_ne!(split.status.code(), Some(0));
    assert!(
        text(&split.stderr).to_lowercase().contains("determinant"),
        "{}",
        text(&split.stderr)
    );

    let tight = qalink(
        dir.path(),
        &["qa-cert", c, "--link", "4_1", "--budget", "1"],
    );
    assert_eq!(tight.status.code(), Some(3), "{}", text(&tight.stderr));
}

#[test]
fn reports_are_byte_identical_across_worker_counts() {
    let (dir, corpus) = setup();
    let c = corpus.to_str().unwrap();
    for format in ["json", "csv"] {
        let mut outputs = Vec::new();
        for workers in ["1", "1", "4"] {
            let out = dir.path().join(format!("r.{format}"));
            let run = qalink(
                dir.path(),
                &[
                    "--workers",
                    workers,
                    "report",
                    c,
                    "--format",
                    format,
                    "--out",
                    out.to_str().unwrap(),
                ],
            );
            assert_eq!(run.status.code(), Some(0), "{}", text(&run.stderr));
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[0], outputs[2]);
    }
}

#[test]
fn config_file_overrides_flags() {
    let (dir, corpus) = setup();
    let c = corpus.to_str().unwrap();
    let out = dir.path().join("r.out");
    std::fs::write(dir.path().join("qalink.conf"), "format = csv\n").unwrap();
    let run = qalink(
        dir.path(),
        &[
            "report",
            c,
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(run.status.code(), Some(0), "{}", text(&run.stderr));
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("name,orientation,"));
}

#[test]
fn reversed_convention_is_refused_while_anchored() {
    let (dir, corpus) = setup();
    let c = corpus.to_str().unwrap();
    let conf = dir.path().join("reversed.conf");
    std::fs::write(&conf, "convention = reversed\n").unwrap();
    let run = qalink(
        dir.path(),
        &["--config", conf.to_str().unwrap(), "verify-theorem", c],
    );
    assert_eq!(run.status.code(), Some(1));
    assert!(
        text(&run.stderr).contains("anchor"),
        "{}",
        text(&run.stderr)
    );

    std::fs::write(&conf, "convention = reversed\nanchor = unlocked\n").unwrap();
    let run = qalink(
        dir.path(),
        &["--config", conf.to_str().unwrap(), "verify-theorem", c],
    );
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn committed_config_parses() {
    let conf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../qalink.conf");
    let (dir, corpus) = setup();
    let run = qalink(
        dir.path(),
        &[
            "--config",
            conf.to_str().unwrap(),
            "verify-theorem",
            corpus.to_str().unwrap(),
        ],
    );
    assert_eq!(run.status.code(), Some(0), "{}", text(&run.stderr));
}
