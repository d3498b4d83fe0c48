#![allow(dead_code)] // the two test binaries use different subsets

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(args: &[&str]) -> String {
    let out = bgg(args);
    assert!(
        out.status.success(),
        "bgg {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Byte-identical comparison against a checked-in golden file. Set BLESS=1
/// to rewrite the goldens from current output.
pub fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var("BLESS").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()));
    assert_eq!(
        actual,
        expected,
        "output differs from golden {}",
        path.display()
    );
}
