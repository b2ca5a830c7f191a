//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;

use permucell_core::suite::{run_criterion, Status, CRITERIA};

fn run_suite(out: &Path, jobs: &str) -> bool {
    Command::new(env!("CARGO_BIN_EXE_permucell"))
        .args(["suite", "--jobs", jobs, "--out"])
        .arg(out)
        .env_remove("PERMUCELL_CACHE")
        .output()
        .expect("spawn permucell")
        .status
        .success()
}

fn determinism() -> Result<(), String> {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    if !run_suite(a.path(), "1") || !run_suite(b.path(), "2") {
        return Err("suite run failed".into());
    }
    for name in ["report.json", "report.md", "report.csv"] {
        let x = std::fs::read(a.path().join(name)).map_err(|e| format!("{name}: {e}"))?;
        let y = std::fs::read(b.path().join(name)).map_err(|e| format!("{name}: {e}"))?;
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    Ok(())
}

fn main() {
    let mut failed = 0;
    for (id, title) in CRITERIA {
        let r = run_criterion(id);
        println!("criterion {id} ({title}): {} [{} checks]", r.status.as_str(), r.checks);
        for f in &r.failures {
            println!("    {f}");
        }
        for n in &r.notes {
            println!("    note: {n}");
        }
        if r.status == Status::Fail {
            failed += 1;
        }
    }
    match determinism() {
        Ok(()) => println!("criterion 9 (determinism): pass"),
        Err(e) => {
            println!("criterion 9 (determinism): fail ({e})");
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
