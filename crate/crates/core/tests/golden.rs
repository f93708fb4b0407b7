//! Snapshot tests of CLI reports over the corpus. Set `BQTOP_BLESS=1` to
//! rewrite the snapshots.

mod common;

use std::path::PathBuf;

use bqtop_core::cli::{execute, Cli};
use clap::Parser;
use common::*;

const COMMANDS: [(&str, &[&str]); 5] = [
    ("check", &["check"]),
    ("cells", &["cells"]),
    ("homology", &["homology"]),
    ("pi1", &["pi1", "--simplify", "--abelianization"]),
    ("compare", &["compare"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn corpus_reports_match_snapshots() {
    let bless = std::env::var_os("BQTOP_BLESS").is_some();
    std::fs::create_dir_all(golden_dir()).unwrap();
    let mut mismatches = Vec::new();
    for file in corpus_quivers() {
        let stem = file.trim_end_matches(".bq");
        for (name, args) in COMMANDS {
            let path = corpus_path(&file);
            let mut argv = vec!["bqtop", args[0], path.to_str().unwrap()];
            argv.extend_from_slice(&args[1..]);
            let (text, _) = execute(&Cli::try_parse_from(argv).unwrap()).unwrap();
            let snapshot = golden_dir().join(format!("{stem}.{name}.json"));
            if bless {
                std::fs::write(&snapshot, &text).unwrap();
            } else if std::fs::read_to_string(&snapshot).ok().as_deref() != Some(text.as_str()) {
                mismatches.push(snapshot.file_name().unwrap().to_string_lossy().into_owned());
            }
        }
    }
    assert!(
        mismatches.is_empty(),
        "snapshots differ (rerun with BQTOP_BLESS=1 to accept): {mismatches:?}"
    );
}
