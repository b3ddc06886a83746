use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_daggereq"));
    cmd.env_remove("DAGGEREQ_SEED");
    for a in args {
        if a.ends_with(".term") || a.ends_with(".sig") {
            cmd.arg(fixture(a));
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn equal_terms_exit_zero_with_the_isomorphism() {
    let o = run(&["check", "n.term", "m.term"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("isomorphic (1 isomorphism); semantic coefficient = 1\n"),
        "{out}"
    );
    assert!(out.contains("box b1 -> b3 (g)"));
    assert_eq!(out.matches("wire w").count(), 5);
}

#[test]
fn word_traces_need_dimension_three() {
    let o = run(&["check", "word_left.term", "word_right.term"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("dimension 2: no separating interpretation in 100 trials"),
        "{out}"
    );
    assert!(out.contains("witness: ring gauss, dims A=3"), "{out}");
    assert!(out.contains("re-checked by direct summation"));
    assert!(out.contains("dim A = 3\n"));
}

#[test]
fn witness_replays_through_eval() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.interp");
    let p = path.to_str().unwrap();
    let o = run(&[
        "check",
        "word_left.term",
        "word_right.term",
        "--witness-out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let value = |side: &str| {
        out.lines()
            .find_map(|l| {
                l.trim()
                    .strip_prefix(side)
                    .map(|v| v.trim_start_matches([' ', '=']).trim().to_string())
            })
            .unwrap()
    };
    let (left, right) = (value("left"), value("right"));
    assert_ne!(left, right);
    let l = run(&["eval", "--interp", p, "word_left.term"]);
    let r = run(&["eval", "--interp", p, "word_right.term"]);
    assert_eq!(l.status.code(), Some(0));
    assert_eq!(stdout(&l).trim(), left);
    assert_eq!(stdout(&r).trim(), right);
}

#[test]
fn trivial_cycle_against_empty_term() {
    let o = run(&["check", "loop.term", "empty.term"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("witness: ring gauss, dims A=2"), "{out}");
    assert!(out.contains("left  = 2\n"));
    assert!(out.contains("right = 1\n"));
}

#[test]
fn malformed_input_exits_two() {
    let o = run(&["check", "malformed.term", "empty.term"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("malformed.term:3:"), "{err}");
    let o = run(&["check", "n.term", "loop.term"]);
    assert_eq!(o.status.code(), Some(2), "the signatures differ");
    let o = run(&["check", "--sig", "words.sig", "loop.term", "open_hk.term"]);
    assert_eq!(o.status.code(), Some(2), "the types differ");
}

#[test]
fn json_record() {
    let o = run(&[
        "check",
        "open_hk.term",
        "open_kh.term",
        "--ring",
        "float",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "not-equal");
    assert_eq!(v["iso_count"], 0);
    assert_eq!(v["semantic_count"], 0);
    assert_eq!(v["witness"]["ring"], "float");
    assert_eq!(v["witness"]["dims"]["A"], 3);
    assert!(v["witness"]["path"].is_null());
    let o = run(&["check", "n.term", "m.term", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["iso_count"], 1);
    let o = run(&["check", "malformed.term", "m.term", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "error");
}

#[test]
fn seed_flag_and_environment() {
    let args = [
        "check",
        "word_left.term",
        "word_right.term",
        "--format",
        "json",
    ];
    let base = stdout(&run(&args));
    assert_eq!(base, stdout(&run(&args)), "deterministic");
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "7"]);
    let by_flag = stdout(&run(&seeded));
    assert_ne!(base, by_flag);
    let by_env = Command::new(env!("CARGO_BIN_EXE_daggereq"))
        .env("DAGGEREQ_SEED", "7")
        .args(["check", "--format", "json"])
        .arg(fixture("word_left.term"))
        .arg(fixture("word_right.term"))
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(by_env.stdout).unwrap(), by_flag);
}

#[test]
fn explicit_dims_skip_the_small_probe() {
    let o = run(&[
        "check",
        "word_left.term",
        "word_right.term",
        "--dims",
        "A=2",
        "--trials",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(1), "the structural verdict stands");
    let out = stdout(&o);
    assert!(!out.contains("dimension 2:"));
    assert!(
        out.contains("no separating interpretation found in 20 trials"),
        "{out}"
    );
    let o = run(&[
        "check",
        "word_left.term",
        "word_right.term",
        "--dims",
        "C=2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn poly_witness_uses_the_right_diagram() {
    let o = run(&["check", "open_hk.term", "open_kh.term", "--ring", "poly"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("left  = 0\n"), "{out}");
    assert!(
        out.contains("right = xi[b1]*xi[b2]*xi[b3]*xi[b4]\n"),
        "{out}"
    );
}

#[test]
fn poly_and_iso_count() {
    let o = run(&["poly", "n.term", "m.term"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("coefficient of xi[b1]*xi[b2]*xi[b3] = 1"),
        "{out}"
    );
    let o = run(&["iso-count", "m.term", "m.term"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "structural=1 semantic=1\n");
    let o = run(&["iso-count", "loop.term", "empty.term"]);
    assert_eq!(stdout(&o), "structural=0 semantic=0\n");
}

#[test]
fn export_formats() {
    let o = run(&["export", "loop.term"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "trivial A 1\n");
    let o = run(&["export", "n.term", "--format", "dot"]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph diagram {\n"));
    assert_eq!(out.matches("[shape=box").count(), 3);
    assert_eq!(out.matches(" -> ").count(), 5);
    let o = run(&["export", "open_hk.term"]);
    let out = stdout(&o);
    assert!(
        out.contains(": __close_in"),
        "open terms are closed first: {out}"
    );
}
