//! CLI acceptance: byte-identical reports regardless of thread count.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_staudt"))
        .args(args)
        .env_remove("STAUDT_CACHE_DIR")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_14_verify_output_is_byte_identical_across_thread_counts() {
    let (one, err1, code1) = run(&["verify", "GF(3,2)", "--format", "json", "--threads", "1"]);
    let (eight, err8, code8) = run(&["verify", "GF(3,2)", "--format", "json", "--threads", "8"]);
    assert_eq!(code1, 0, "stderr: {err1}");
    assert_eq!(code8, 0, "stderr: {err8}");
    assert_eq!(
        one, eight,
        "reports differ between --threads 1 and --threads 8"
    );
    assert!(one.contains("\"preservers\": 1440"));
    // Repeat runs with the same configuration are also identical.
    let (again, _, _) = run(&["verify", "GF(3,2)", "--format", "json", "--threads", "8"]);
    assert_eq!(eight, again);
    println!(
        "criterion 14 PASS: verify GF(3,2) JSON is byte-identical for --threads 1 and --threads 8"
    );
}
