//! The fixed command lines behind the golden files.

use std::path::PathBuf;
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    ("01-classify", &["--field", "F3(t)", "classify", "X1 + X1^3 + (t)*X2^3"]),
    ("02-reduce", &["--field", "F2(t)", "--cert", "reduce", "X1^4 + (t^2)*X2^4 + (t)*X3^2"]),
    ("03-normalize", &["--field", "F2(t)", "--cert", "normalize", "X1 + X2^2 + (t)*X3^2", "X1^2 + X3^4"]),
    ("04-complete", &["--field", "F2(t)", "--cert", "complete", "X1^4"]),
    ("05-embed", &["--field", "F3(t)", "--cert", "embed", "X1 + X1^3 + (t)*X2^3"]),
    ("06-canon", &["--field", "F2(t)", "--seed", "7", "--cert", "canon", "X1 + X1^2 + (t)*X2^2", "Y1^2 + (t)*Y1^4*Y2^2"]),
    ("07-solve", &["--field", "F2(t)", "--cert", "solve", "X1^2 + (t)*X2^2", "(t^3+1)/(t+1)"]),
    ("08-witness", &["--field", "F2(t)", "--seed", "5", "--cert", "witness"]),
    ("09-standard", &["--field", "F2(t)", "standard", "v"]),
    ("10-check-cert", &["check-cert", "tests/golden/e-classify.cert"]),
];

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the built binary from the package root; returns stdout and status.
pub fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_addpoly"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().unwrap_or(-1))
}
