use std::path::Path;
use std::process::Command;

/// The generated header must stand alone as C.
#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/resolvent.h");
    assert!(header.exists(), "header was not generated");
    let Ok(status) = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
}
