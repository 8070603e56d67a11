use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ecc-cover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ecc-cover")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_solve_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let cover = dir.path().join("g.cover");

    let out = run(&["gen", "40", "0.2", "--seed", "11", "--out", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "gen: {}", String::from_utf8_lossy(&out.stderr));

    let out = run(&[
        "solve",
        graph.to_str().unwrap(),
        "--cover-out",
        cover.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "solve: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("status optimal"));

    let out = run(&["verify", graph.to_str().unwrap(), cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid cover:"));
}

#[test]
fn solve_json_reports_consistent_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    run(&["gen", "30", "0.25", "--seed", "3", "--out", graph.to_str().unwrap()]);

    let out = run(&["solve", graph.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let size = v["size"].as_u64().unwrap();
    let lb = v["lower_bound"].as_u64().unwrap();
    assert!(lb <= size);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["cliques"].as_array().unwrap().len() as u64, size);
}

#[test]
fn verify_rejects_tampered_cover() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let cover = dir.path().join("g.cover");
    fs::write(&graph, "0 1\n1 2\n2 0\n2 3\n").unwrap();
    fs::write(&cover, "0 1 2\n").unwrap();

    let out = run(&["verify", graph.to_str().unwrap(), cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("invalid cover:"));

    fs::write(&cover, "0 1 2\n2 3\n").unwrap();
    let out = run(&["verify", graph.to_str().unwrap(), cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2_and_keep_stdout_clean() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run(&["solve", "/no/such/file.txt"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("solve"));
}

#[test]
fn oracle_prints_bare_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bowtie.txt");
    fs::write(&graph, "0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n").unwrap();

    let out = run(&["oracle", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn reduce_gramm_only_closes_a_tree() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("tree.txt");
    fs::write(&graph, "0 1\n1 2\n1 3\n3 4\n").unwrap();

    let out = run(&["reduce", graph.to_str().unwrap(), "--gramm-only"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("forced 4"), "{text}");
    assert!(text.contains("ecc_kernel 0 uncovered edges"), "{text}");
}
