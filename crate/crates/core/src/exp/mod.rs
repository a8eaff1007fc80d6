//! Experiment runner: configuration, the four commands, file formats and
//! figures.

use std::path::Path;

use crate::error::{Error, Result};

pub mod analyze;
pub mod cli;
pub mod config;
pub mod predict;
pub mod scores;
pub mod svg;
pub mod train;

pub use analyze::{cmd_analyze, RepresentationStats};
pub use cli::{execute, Cli};
pub use predict::cmd_predict;
pub use scores::{normalized_score, relative_score};
pub use train::cmd_rl;

/// Round-trip float text: 17 significant digits.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Distinct items in first-seen order.
pub(crate) fn distinct<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out = Vec::new();
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}
