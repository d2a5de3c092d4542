#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn codelift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codelift"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn report(args: &[&str]) -> serde_json::Value {
    let out = codelift(args);
    assert!(
        out.status.success(),
        "codelift {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

pub fn path(p: &std::path::Path) -> &str {
    p.to_str().expect("utf-8 path")
}
