use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

/// Defaults read from a TOML file. Top-level keys set global options; a
/// table named after a subcommand sets that command's parameters:
///
/// ```toml
/// jobs = 4
/// format = "markdown"
///
/// [hoch]
/// dim = 2
/// m = 2
/// ```
#[derive(Debug, Default)]
pub struct FileConfig {
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub commands: BTreeMap<String, toml::Table>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Globals {
    out: Option<PathBuf>,
    format: Option<String>,
    cache_dir: Option<PathBuf>,
    jobs: Option<usize>,
}

const COMMANDS: [&str; 8] = ["cells", "koszul", "bar", "cobar", "hoch", "gs", "bracket", "suite"];

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut table: toml::Table = toml::from_str(text)?;
        let mut commands = BTreeMap::new();
        for name in COMMANDS {
            match table.remove(name) {
                None => {}
                Some(toml::Value::Table(t)) => {
                    commands.insert(name.to_string(), t);
                }
                Some(_) => anyhow::bail!("`{name}` must be a table"),
            }
        }
        let g: Globals = toml::Value::Table(table).try_into()?;
        Ok(Self { out: g.out, format: g.format, cache_dir: g.cache_dir, jobs: g.jobs, commands })
    }

    pub fn section(&self, command: &str) -> Section<'_> {
        Section(self.commands.get(command))
    }
}

pub struct Section<'a>(Option<&'a toml::Table>);

impl Section<'_> {
    pub fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.0.and_then(|t| t.get(key)) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) => Ok(Some(*v)),
            Some(other) => anyhow::bail!("config key `{key}` must be an integer, got {other}"),
        }
    }

    pub fn string(&self, key: &str) -> Result<Option<String>> {
        match self.0.and_then(|t| t.get(key)) {
            None => Ok(None),
            Some(toml::Value::String(v)) => Ok(Some(v.clone())),
            Some(other) => anyhow::bail!("config key `{key}` must be a string, got {other}"),
        }
    }
}
