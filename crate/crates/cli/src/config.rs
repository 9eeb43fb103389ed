use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use etaforge::guards::Guards;

pub const GUARDS_ENV: &str = "ETAFORGE_GUARDS";

/// Flag overrides for individual guards.
#[derive(Clone, Debug, Default)]
pub struct GuardOverrides {
    pub max_divisors: Option<usize>,
    pub max_matrix_divisors: Option<usize>,
    pub max_det: Option<u64>,
    pub max_k: Option<i64>,
}

/// Defaults, then the config file (`--config`, else `$ETAFORGE_GUARDS`),
/// then flags.
pub fn resolve(explicit: Option<&Path>, overrides: &GuardOverrides) -> Result<(Guards, Option<PathBuf>)> {
    let path = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(GUARDS_ENV).map(PathBuf::from));
    let mut guards = match &path {
        Some(p) => load(p)?,
        None => Guards::default(),
    };
    if let Some(v) = overrides.max_divisors {
        guards.max_divisors = v;
    }
    if let Some(v) = overrides.max_matrix_divisors {
        guards.max_matrix_divisors = v;
    }
    if let Some(v) = overrides.max_det {
        guards.max_det = v;
    }
    if let Some(v) = overrides.max_k {
        guards.max_k = v;
    }
    Ok((guards, path))
}

fn load(path: &Path) -> Result<Guards> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing config file {}", path.display()))
}

/// Keys may sit at the top level or under a `[guards]` table.
pub fn parse(text: &str) -> Result<Guards> {
    let value: toml::Table = toml::from_str(text)?;
    let table = match value.get("guards") {
        Some(toml::Value::Table(t)) if value.len() == 1 => t.clone(),
        _ => value,
    };
    Ok(toml::Value::Table(table).try_into()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_layouts() {
        let g = parse("max_k = 10").unwrap();
        assert_eq!(g.max_k, 10);
        assert_eq!(g.max_divisors, Guards::default().max_divisors);
        let g = parse("[guards]\nmax_det = 5\n").unwrap();
        assert_eq!(g.max_det, 5);
        assert!(parse("max_kk = 3").is_err());
    }
}
