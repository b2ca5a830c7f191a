//! On-disk cache of built complexes: one matrix file per differential plus
//! the bases, under a directory named by the build parameters.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use permucell_core::chain::FinChainComplex;
use permucell_core::ratlin::{read_matrix, write_matrix};
use permucell_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Bases {
    lo: i64,
    basis: Vec<Vec<String>>,
}

fn entry(dir: &Path, key: &str) -> PathBuf {
    dir.join(key)
}

pub fn load(dir: &Path, key: &str) -> Result<Option<FinChainComplex<Rational>>> {
    let root = entry(dir, key);
    let bases_path = root.join("basis.json");
    if !bases_path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&bases_path)?;
    let bases: Bases = serde_json::from_str(&text).with_context(|| format!("reading {}", bases_path.display()))?;
    let mut diff = Vec::new();
    for i in 0..bases.basis.len().saturating_sub(1) {
        let path = root.join(format!("d{}.mat", bases.lo + i as i64));
        diff.push(read_matrix(&path).with_context(|| format!("reading {}", path.display()))?);
    }
    Ok(Some(FinChainComplex::new(bases.lo, bases.basis, diff)?))
}

pub fn store(dir: &Path, key: &str, c: &FinChainComplex<Rational>) -> Result<()> {
    let root = entry(dir, key);
    std::fs::create_dir_all(&root).with_context(|| format!("creating {}", root.display()))?;
    let degrees = c.degrees();
    let lo = degrees.first().copied().unwrap_or(0);
    for &d in &degrees {
        if let Some(m) = c.diff(d) {
            write_matrix(&root.join(format!("d{d}.mat")), m)?;
        }
    }
    let bases = Bases { lo, basis: degrees.iter().map(|&d| c.basis(d).to_vec()).collect() };
    std::fs::write(root.join("basis.json"), serde_json::to_string(&bases)?)?;
    Ok(())
}

/// Loads the complex from the cache when present, otherwise builds and
/// stores it. Without a cache directory this just builds.
pub fn cached<F>(dir: Option<&Path>, key: &str, build: F) -> Result<(FinChainComplex<Rational>, bool)>
where
    F: FnOnce() -> permucell_core::Result<FinChainComplex<Rational>>,
{
    let Some(dir) = dir else { return Ok((build()?, false)) };
    if let Some(c) = load(dir, key)? {
        return Ok((c, true));
    }
    let c = build()?;
    store(dir, key, &c)?;
    Ok((c, false))
}
