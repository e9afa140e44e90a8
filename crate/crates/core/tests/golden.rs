//! Golden-file maintenance. Regenerate after an intentional output change:
//! `cargo test -p toboggan --test golden -- --ignored`.

use std::path::Path;

use toboggan::acceptance::{golden_outputs, GOLDEN};

#[test]
#[ignore]
fn regenerate_golden_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for (name, text) in golden_outputs().unwrap() {
        std::fs::write(dir.join(name), text).unwrap();
    }
}

#[test]
fn golden_files_match_current_outputs() {
    let current = golden_outputs().unwrap();
    assert_eq!(current.len(), GOLDEN.len());
    for ((name, text), (gname, golden)) in current.iter().zip(GOLDEN.iter()) {
        assert_eq!(name, gname);
        assert!(text == golden, "{name} differs from its golden copy");
    }
}
