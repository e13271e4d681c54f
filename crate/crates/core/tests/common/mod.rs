#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

/// Path of a shipped scene file.
pub fn scene_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenes")
        .join(name)
}
