//! Command-line behaviour through the in-process entry point.

use addpoly::cli::{run, Outcome};

fn call(args: &[&str]) -> Outcome {
    call_with_stdin(args, "")
}

fn call_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv: Vec<String> = std::iter::once("addpoly").chain(args.iter().copied()).map(String::from).collect();
    run(&argv, &mut stdin.as_bytes())
}

fn check(cert: &str) -> Outcome {
    let dir = std::env::temp_dir().join(format!("addpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{:x}.cert", cert.len() ^ cert.bytes().map(usize::from).sum::<usize>()));
    std::fs::write(&path, cert).unwrap();
    let out = call(&["check-cert", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    out
}

#[test]
fn classify_w_over_f3() {
    let out = call(&["--field", "F3(t)", "classify", "X1 + X1^3 + (t)*X2^3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("permawound: false"), "{}", out.stdout);
    assert!(out.stdout.contains("reduced: true"));
}

#[test]
fn standard_v_over_f2() {
    let out = call(&["--field", "F2(t)", "standard", "v"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("X0^2 + (t)*X1^2 - X0"), "{}", out.stdout);
}

#[test]
fn witness_over_f2() {
    let out = call(&["--field", "F2(t)", "witness"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("t^-1"), "{}", out.stdout);
}

#[test]
fn exponent_not_a_power_of_p() {
    let out = call(&["--field", "F2(t)", "classify", "X1^3"]);
    assert_eq!(out.code, 2, "{}", out.stdout);
}

#[test]
fn zero_input_parses() {
    let out = call(&["--field", "F2(t)", "reduce", "0"]);
    assert_ne!(out.code, 2, "{}", out.stderr);
}

#[test]
fn expressions_from_stdin() {
    let out = call_with_stdin(&["--field", "F3(t)", "classify"], "# W\nX1 + X1^3 + (t)*X2^3\n");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, call(&["--field", "F3(t)", "classify", "X1 + X1^3 + (t)*X2^3"]).stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"]).code, 1);
    assert_eq!(call(&["--seed", "x", "classify", "X1"]).code, 1);
    assert_eq!(call(&["--field", "G2(t)", "classify", "X1"]).code, 2);
    assert_eq!(call(&["--version"]).code, 0);
}

#[test]
fn unsupported_extension_degree() {
    let out = call(&["--field", "F3(t)", "--max-const-ext", "1", "standard", "v-iso", "X0"]);
    assert_eq!(out.code, 3, "{}{}", out.stdout, out.stderr);
}

#[test]
fn arity_is_a_precondition() {
    assert_eq!(call(&["--field", "F2(t)", "solve", "X1^2"]).code, 3);
}

const CERTIFIED: &[&[&str]] = &[
    &["--field", "F2(t)", "--cert", "reduce", "X1^4 + (t^2)*X2^4 + (t)*X3^2"],
    &["--field", "F3(t)", "--cert", "classify", "X1 + X1^3 + (t)*X2^3"],
    &["--field", "F2(t)", "--cert", "normalize", "X1 + X2^2 + (t)*X3^2", "X1^2 + X3^4"],
    &["--field", "F2(t)", "--cert", "complete", "X1^4"],
    &["--field", "F3(t)", "--cert", "embed", "X1 + X1^3 + (t)*X2^3"],
    &["--field", "F2(t)", "--cert", "canon", "X1 + X1^2 + (t)*X2^2", "Y1^2 + (t)*Y1^4*Y2^2"],
    &["--field", "F2(t)", "--cert", "canon", "--ext1", "X1 + X1^2 + (t)*X2^2", "(t)*X1^8 + X1^4"],
    &["--field", "F2(t)", "--cert", "canon", "--powers", "2,3,4", "X1 + X1^4"],
    &["--field", "F2(t)", "--cert", "solve", "X1^2 + (t)*X2^2", "(t^3+1)/(t+1)"],
    &["--field", "F2(t)", "--cert", "solve", "X1^4", "t"],
    &["--field", "F3(t)", "--cert", "witness"],
    &["--field", "F2(t)", "--cert", "standard", "weil", "2"],
    &["--field", "F3(t)", "--cert", "--max-const-ext", "4", "standard", "v-iso", "X0"],
];

#[test]
fn certificates_are_accepted() {
    for args in CERTIFIED {
        let out = call(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert!(out.stdout.contains("begin-certificate"), "{args:?}");
        let verdict = check(&out.stdout);
        assert_eq!(verdict.code, 0, "{args:?}: {}{}", verdict.stdout, verdict.stderr);
        assert!(verdict.stdout.contains("certificate: accepted"));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let out = call(&["--field", "F2(t)", "--cert", "reduce", "X1^4 + (t^2)*X2^4 + (t)*X3^2"]);
    assert_eq!(out.code, 0);
    let tampered = out.stdout.replacen("reduced-form: ", "reduced-form: X1 + ", 1);
    assert_ne!(tampered, out.stdout);
    let verdict = check(&tampered);
    assert_eq!(verdict.code, 4, "{}", verdict.stdout);
    assert!(verdict.stdout.contains("certificate: rejected"));

    let out = call(&["--field", "F2(t)", "--cert", "solve", "X1^2 + (t)*X2^2", "t"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    let x = lines.iter().position(|l| l.starts_with("x: ")).expect("solution line");
    let mut edited: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
    edited[x] = format!("{} + 1", edited[x]);
    let verdict = check(&(edited.join("\n") + "\n"));
    assert_eq!(verdict.code, 4, "{}", verdict.stdout);
}

#[test]
fn certificate_without_block_is_rejected() {
    let out = call(&["--field", "F2(t)", "reduce", "X1^2"]);
    assert_eq!(out.code, 0);
    assert!(!out.stdout.contains("begin-certificate"));
    assert_ne!(check(&out.stdout).code, 0);
}
