use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const SUBCOMMANDS: [&str; 7] = ["price", "calibrate", "optimize", "returns", "ks", "menu", "portfolio"];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> PathBuf {
    tests_dir().join("fixtures").join(format!("{name}.json"))
}

pub fn golden(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.json"))
}

pub fn qclaim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qclaim"))
        .args(args)
        .env_remove("QCLAIM_TOL_SCALE")
        .output()
        .expect("qclaim binary runs")
}

/// Runs one fixture and compares stdout with its golden report byte for
/// byte. With `QCLAIM_BLESS=1` the golden file is rewritten instead.
pub fn check_golden(sub: &str) -> Result<(), String> {
    let scenario = fixture(sub);
    let out = qclaim(&[sub, "--scenario", scenario.to_str().unwrap(), "--pretty"]);
    if !out.status.success() {
        return Err(format!("{sub}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let path = golden(sub);
    if std::env::var_os("QCLAIM_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != out.stdout {
        return Err(format!("{sub}: report differs from {}", path.display()));
    }
    Ok(())
}
