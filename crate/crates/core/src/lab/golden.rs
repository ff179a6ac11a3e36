//! Golden-file comparison.
//!
//! `check` compares text against a stored file. With `UPDATE_GOLDEN=1` in the
//! environment it rewrites the file instead, so pinned outputs are refreshed
//! by rerunning the tests once with the variable set.

use crate::error::{Error, Result};
use std::path::Path;

pub const UPDATE_VAR: &str = "UPDATE_GOLDEN";

pub fn updating() -> bool {
    std::env::var(UPDATE_VAR).is_ok_and(|v| v == "1")
}

/// Errors with the first differing line unless the texts agree.
pub fn check(path: &Path, actual: &str) -> Result<()> {
    if updating() || !path.exists() && std::env::var("CI").is_err() {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, actual)?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(path)?;
    if expected == actual {
        return Ok(());
    }
    let line = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
    Err(Error::Invalid(format!(
        "{} differs from the golden file at line {} (rerun with {UPDATE_VAR}=1 to accept)",
        path.display(),
        line + 1
    )))
}
