use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] manakov::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Inconclusive(_) => 4,
            CliError::Io { .. } | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    println!("wrote {}", path.display());
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_file(dir, name, &s)
}

/// 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct CsvRow<'a> {
    pub x: f64,
    pub y: f64,
    pub irrep: &'a str,
    pub residual: f64,
}

pub fn csv<'a>(rows: impl IntoIterator<Item = CsvRow<'a>>) -> String {
    let mut s = String::from("x,y,irrep,residual\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{}\n", num(r.x), num(r.y), r.irrep, num(r.residual)));
    }
    s
}
