#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// The hand-checkable command lines; each has a golden stdout file.
pub const EXAMPLES: [(&str, &[&str]); 6] = [
    ("interior_symmetric", &["interior", "--z1", "0.5,0", "--z2", "-0.5,0"]),
    ("interior_origin", &["interior", "--z1", "0,0", "--z2", "0.5,0"]),
    ("infinity_axis", &["infinity", "--r", "2", "--theta", "0"]),
    ("envelope_a2_n4", &["envelope", "--a", "2", "--samples", "4"]),
    ("directrix_phi0", &["directrix", "--a", "2", "--phi", "0"]),
    (
        "directrix_phi_half_pi",
        &["directrix", "--a", "2", "--phi", "1.5707963267948966"],
    ),
];

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_catoptrix"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn golden_path(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{ext}"))
}

/// Compares `actual` with the stored golden file. With `CATOPTRIX_BLESS=1`
/// the file is rewritten instead.
pub fn matches_golden(name: &str, ext: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name, ext);
    if std::env::var_os("CATOPTRIX_BLESS").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs from output", path.display()))
    }
}

pub fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("stdout is JSON")
}

pub fn pair(v: &serde_json::Value) -> (f64, f64) {
    (v[0].as_f64().expect("re"), v[1].as_f64().expect("im"))
}
