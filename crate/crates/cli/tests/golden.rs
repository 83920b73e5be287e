//! Frozen command outputs. Regenerate with `BLESS=1 cargo test -p blockscope-cli --test golden`.

use std::path::PathBuf;

use blockscope_cli::run;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn check(golden: &str, args: &[&str], code: i32) {
    let mut argv = vec!["blockscope"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, code, "{}", out.stderr);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(golden);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(out.stdout == want, "output differs from {}", path.display());
}

#[test]
fn verify_empty_corpus() {
    check("verify_empty.json", &["verify", &fixture("empty.json")], 0);
}

#[test]
fn verify_examples_at_two() {
    check(
        "verify_examples_p2.json",
        &["verify", &fixture("paper_7_3.json"), "--prime", "2"],
        0,
    );
}

#[test]
fn verify_text_rendering() {
    check(
        "verify_examples_p3.txt",
        &[
            "verify",
            &fixture("paper_7_3.json"),
            "--prime",
            "3",
            "--format",
            "text",
        ],
        0,
    );
}

#[test]
fn table_of_s3() {
    check(
        "table_s3.json",
        &[
            "table",
            &fixture("small_groups_le_24.json"),
            "--group",
            "SmallGroup(6,1)",
        ],
        0,
    );
}

#[test]
fn blocks_at_three() {
    check(
        "blocks_examples_p3.json",
        &["blocks", &fixture("paper_7_3.json"), "--prime", "3"],
        0,
    );
}

#[test]
fn weil_gu3_2() {
    check(
        "weil_3_2_3.json",
        &["weil", "--n", "3", "--q", "2", "--p", "3"],
        0,
    );
}

#[test]
fn sl2_8() {
    check("sl2_8.json", &["sl2", "--q", "8"], 0);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let a = run(["blockscope", "verify", &fixture("paper_7_3.json")]);
    let b = run([
        "blockscope",
        "verify",
        &fixture("paper_7_3.json"),
        "--jobs",
        "3",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn statement_filter() {
    let out = run([
        "blockscope",
        "verify",
        &fixture("paper_7_3.json"),
        "--statement",
        "thm_A",
        "--prime",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let outcomes = v["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 3);
    assert!(outcomes
        .iter()
        .all(|o| o["statement"] == "thm_A" && o["prime"] == 3));
    assert_eq!(
        run([
            "blockscope",
            "verify",
            &fixture("paper_7_3.json"),
            "--statement",
            "nope"
        ])
        .code,
        1
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_blockscope");
    let status = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["verify", &fixture("empty.json")]), Some(0));
    assert_eq!(
        status(&["weil", "--n", "3", "--q", "2", "--p", "3"]),
        Some(0)
    );
    assert_eq!(status(&["no-such-command"]), Some(1));
}
