use std::path::PathBuf;
use std::process::Command;

/// The generated header compiles as C and as C++.
#[test]
fn header_compiles() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("bqtop.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "bq_quiver_parse",
        "bq_quiver_free",
        "bq_string_free",
        "bq_last_error",
        "BQ_STATUS_VERDICT_FAILED",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        match Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status()
        {
            Ok(s) => assert!(s.success(), "{compiler} rejects the header"),
            Err(_) => eprintln!("{compiler} not found, skipping"),
        }
    }
}

/// A C program linked against the static library runs and agrees with the
/// Rust API.
#[test]
fn c_program_links_and_runs() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libbqtop_ffi.a");
    let mut cargo = Command::new(env!("CARGO"));
    cargo.args(["build", "--quiet", "-p", "bqtop-ffi", "--lib"]).current_dir(&root);
    if profile_dir.ends_with("release") {
        cargo.arg("--release");
    }
    let built = cargo.status();
    if !built.is_ok_and(|s| s.success()) || !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("bqtop-smoke-{}", std::process::id()));
    let build = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status();
    match build {
        Ok(s) => assert!(s.success(), "linking the smoke test failed"),
        Err(_) => {
            eprintln!("cc not found, skipping");
            return;
        }
    }
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(
        run.status.success(),
        "exit {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("\"H1\""));
}
