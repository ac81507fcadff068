#![allow(dead_code)] // shared across test targets that each use a subset

use std::path::PathBuf;

use sublat_cli::parse_group_file;
use sublat_core::PermGroup;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn load(name: &str) -> PermGroup {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_group_file(&text).unwrap().group
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sublat")
}

/// The verification corpus.
pub const CORPUS: &[&str] = &[
    "c6.grp",
    "s3.grp",
    "d8.grp",
    "q8.grp",
    "c2cubed.grp",
    "a4.grp",
    "d12.grp",
    "c3sdc4.grp",
    "sl23.grp",
    "s4.grp",
    "c5sdc4.grp",
    "a5.grp",
    "s3xs3.grp",
    "s5.grp",
];

/// The solvable part of the corpus.
pub const SOLVABLE_CORPUS: &[&str] = &[
    "c6.grp",
    "s3.grp",
    "d8.grp",
    "q8.grp",
    "c2cubed.grp",
    "a4.grp",
    "d12.grp",
    "c3sdc4.grp",
    "sl23.grp",
    "s4.grp",
    "c5sdc4.grp",
    "s3xs3.grp",
];
