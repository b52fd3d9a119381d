//! Golden-file comparison for the CLI. Set `UPDATE_GOLDEN=1` to rewrite the
//! expected outputs.

mod common;

use common::golden::{dir, run, CASES};

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let path = dir().join(format!("{name}.out"));
        let (out, code) = run(args);
        assert_eq!(code, 0, "{name} exited with {code}");
        if update {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(out, expected, "{name} differs from its golden file");
    }
}

#[test]
fn golden_certificates_check() {
    for (name, args) in CASES {
        if !args.contains(&"--cert") {
            continue;
        }
        let path = dir().join(format!("{name}.out"));
        let (out, code) = run(&["check-cert", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {out}");
        assert!(out.contains("certificate: accepted"), "{name}: {out}");
    }
}
