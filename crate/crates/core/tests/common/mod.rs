#![allow(dead_code)]

pub mod oracles;

use std::path::{Path, PathBuf};

use ucc_core::{parse_card, UseCaseCard};

pub const FIXTURES: [&str; 5] =
    ["affective-music-recommender", "driver-monitoring", "scene-narrator", "smart-camera", "student-proctoring"];

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(format!("{name}.ucc"))).unwrap()
}

pub fn fixture(name: &str) -> UseCaseCard {
    parse_card(&fixture_text(name)).unwrap_or_else(|d| panic!("{name}: {d:?}"))
}

/// Compare against `tests/golden/<name>`; `UPDATE_GOLDENS=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some_and(|v| v == "1") {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDENS=1 to create)", path.display()));
    let expected = expected.replace("\r\n", "\n");
    assert!(expected == actual, "{name} differs from golden file {}", path.display());
}
