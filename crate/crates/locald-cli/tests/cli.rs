//! End-to-end tests of the `locald` binary: exit codes, artifact files,
//! JSON shapes, and byte-for-byte determinism under a fixed seed.

use std::path::Path;
use std::process::{Command, Output};

use locald::graph::io::parse_configuration;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_locald"));
    // keep the ambient environment from steering seeded runs
    cmd.env_remove("LOCALD_SEED");
    cmd
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.stderr.is_empty(),
        "unexpected stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decide_example_passes() {
    let out = run(&[
        "decide",
        "--alg",
        "decider:tree_t:1",
        "--lang",
        "tree_t:1",
        "--max-n",
        "5",
        "--ids",
        "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["passed"], true);
    assert_eq!(json["perN"].as_array().unwrap().len(), 5);
}

#[test]
fn decide_mismatched_radius_fails_with_exit_one() {
    let out = run(&[
        "decide",
        "--alg",
        "decider:tree_t:2",
        "--lang",
        "tree_t:1",
        "--max-n",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["passed"], false);
}

#[test]
fn verify_example_passes() {
    let out = run(&[
        "verify",
        "--ver",
        "verifier:eqsize",
        "--lang",
        "eq-size-partition",
        "--max-n",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["passed"], true);
    assert_eq!(json["verifier"], "verifier:eq-size-partition");
}

#[test]
fn verify_accepts_the_long_verifier_names_too() {
    let out = run(&[
        "verify",
        "--ver",
        "verifier:tree",
        "--lang",
        "tree",
        "--max-n",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["decide", "--alg", "decider:nope", "--lang", "tree"][..],
        &["decide", "--alg", "decider:tree_t:1", "--lang", "nope"][..],
        &["decide", "--alg", "decider:tree_t:1", "--lang", "tree", "--max-n", "9"][..],
        &["verify", "--ver", "verifier:tree", "--lang", "tree", "--space", "weird"][..],
        &["fool", "tree", "--k", "3"][..],
        &["enumerate", "--kind", "connected", "--n", "8"][..],
        &["no-such-subcommand"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(!out.stderr.is_empty(), "args: {args:?}");
    }
}

#[test]
fn gadget_pathcycle_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gadget", "pathcycle", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let path_cfg =
        parse_configuration(&std::fs::read_to_string(dir.path().join("path-5.cfg")).unwrap())
            .unwrap();
    let cycle_cfg =
        parse_configuration(&std::fs::read_to_string(dir.path().join("cycle-6.cfg")).unwrap())
            .unwrap();
    assert_eq!(path_cfg.n(), 5);
    assert_eq!(path_cfg.topology().m(), 4);
    assert!(path_cfg.topology().is_tree());
    assert_eq!(cycle_cfg.n(), 6);
    assert_eq!(cycle_cfg.topology().m(), 6);
    assert!(!cycle_cfg.topology().is_tree());
}

#[test]
fn gadget_partition_reports_membership() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "gadget", "partition", "--left-size", "3", "--right-size", "3", "--left-input", "0",
            "--right-input", "1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["member"], true);
    let cfg = parse_configuration(
        &std::fs::read_to_string(dir.path().join("partition-3-3.cfg")).unwrap(),
    )
    .unwrap();
    assert_eq!(cfg.n(), json["nodes"].as_u64().unwrap() as usize);

    // same input on both blobs sinks membership
    let out = run_in(
        dir.path(),
        &[
            "gadget", "partition", "--left-size", "3", "--right-size", "3", "--left-input", "1",
            "--right-input", "1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["member"], false);
}

#[test]
fn gadget_treepair_validates_its_inputs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("star.cfg"), "4 3\n0 1\n0 2\n0 3\n").unwrap();
    std::fs::write(dir.path().join("spine.cfg"), "4 3\n0 1\n1 2\n1 3\n").unwrap();
    std::fs::write(dir.path().join("cycle.cfg"), "3 3\n0 1\n1 2\n0 2\n").unwrap();

    // identical rooted shapes join into a member instance
    let out = run_in(
        dir.path(),
        &["gadget", "treepair", "--left", "star.cfg", "--right", "star.cfg"],
    );
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["member"], true);
    assert!(dir.path().join("treepair-12.cfg").exists());

    // different rooted shapes join into a non-member instance
    let out = run_in(
        dir.path(),
        &["gadget", "treepair", "--left", "star.cfg", "--right", "spine.cfg"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["member"], false);

    // a cycle half is a usage error
    let out = run_in(
        dir.path(),
        &["gadget", "treepair", "--left", "star.cfg", "--right", "cycle.cfg"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gadget_splice_emits_cycle_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gadget", "splice", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["pathNodes"], 520);
    let cycle = parse_configuration(
        &std::fs::read_to_string(
            dir.path()
                .join(format!("splice-cycle-{}.cfg", json["cycleNodes"])),
        )
        .unwrap(),
    )
    .unwrap();
    assert!(!cycle.topology().is_tree());
    let certs: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("splice-certs.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(
        certs["certificates"].as_array().unwrap().len(),
        cycle.n()
    );
}

#[test]
fn fool_tree_splices_the_strawman_but_not_the_honest_scheme() {
    let out = run(&["fool", "tree", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["donorAccepted"], true);
    assert_eq!(json["result"]["spliced"], true);
    assert_eq!(json["result"]["cycleAccepted"], true);
    assert_eq!(json["result"]["cycleIsTree"], false);

    let out = run(&["fool", "tree", "--k", "0", "--scheme", "honest"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["donorAccepted"], true);
    assert_eq!(json["result"]["spliced"], false);
}

#[test]
fn fool_partition_transplants_summaries_but_not_quotients() {
    let out = run(&["fool", "partition", "--pool-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["result"]["fooled"], true);
    assert_eq!(json["result"]["member"], false);

    let out = run(&["fool", "partition", "--pool-n", "4", "--scheme", "quotient"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["fooled"], false);
}

#[test]
fn search_min_cert_finds_the_one_bit_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c6.cfg");
    std::fs::write(&file, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    let out = run(&[
        "search",
        "min-cert",
        "--config",
        file.to_str().unwrap(),
        "--ver",
        "verifier:bipartite",
        "--max-bits",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["found"]["bits"], 1);
    assert_eq!(json["found"]["certificates"].as_array().unwrap().len(), 6);
}

#[test]
fn search_soundness_rejects_cycles_and_accepts_trees() {
    let dir = tempfile::tempdir().unwrap();
    let cycle_file = dir.path().join("c5.cfg");
    std::fs::write(&cycle_file, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = run(&[
        "search",
        "soundness",
        "--config",
        cycle_file.to_str().unwrap(),
        "--ver",
        "verifier:tree",
        "--space",
        "values:8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["accepted"].is_null());

    // JSON-form configurations load through the same flag
    let tree_file = dir.path().join("p3.json");
    std::fs::write(&tree_file, r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
    let out = run(&[
        "search",
        "soundness",
        "--config",
        tree_file.to_str().unwrap(),
        "--ver",
        "verifier:tree",
        "--space",
        "values:4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["accepted"]["certificates"].as_array().unwrap().len(), 3);
}

#[test]
fn search_budget_overrun_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p4.cfg");
    std::fs::write(&file, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let out = run(&[
        "search",
        "soundness",
        "--config",
        file.to_str().unwrap(),
        "--ver",
        "verifier:tree",
        "--space",
        "bits:6",
        "--max-candidates",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-candidates"));
}

#[test]
fn table_stays_within_bounds_and_is_deterministic() {
    let a = run(&["table", "--seed", "42"]);
    let b = run(&["table", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    // the environment variable is the same knob as the flag
    let c = bin()
        .env("LOCALD_SEED", "42")
        .args(["table"])
        .output()
        .unwrap();
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(a.stdout, c.stdout);

    let csv = run(&["table", "--seed", "42", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout)
        .lines()
        .next()
        .unwrap()
        .starts_with("language,"));
}

#[test]
fn enumerate_counts_match_the_catalog() {
    for (kind, n, count) in [
        ("trees", "7", 11),
        ("connected", "6", 112),
        ("labeled-trees", "5", 125),
    ] {
        let out = run(&["enumerate", "--kind", kind, "--n", n]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
        assert_eq!(stdout_json(&out)["instances"], count, "{kind}");
    }

    let out = run(&["enumerate", "--kind", "trees", "--n", "4", "--list"]);
    let lines: Vec<_> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], 4);
    }
}

#[test]
fn reports_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("report.json");
    let out = run(&[
        "decide",
        "--alg",
        "decider:tree_t:1",
        "--lang",
        "tree_t:1",
        "--max-n",
        "3",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
}
